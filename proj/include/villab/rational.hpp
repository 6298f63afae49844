#pragma once

// Exact arithmetic foundation: arbitrary-precision integers and rationals,
// integer matrices/vectors, and canonical string rendering.  Every
// computation in the library stays in exact arithmetic; doubles appear only
// when a report is rendered.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace villab {

// et_off: plain value semantics, so ternaries and std::max work on results
// of arithmetic without expression-template surprises.
using BigInt =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                  boost::multiprecision::et_off>;

using IntVector = std::vector<BigInt>;
using RationalVector = std::vector<Rational>;

/// Dense matrix of nonnegative big integers, row-indexed by source vertex
/// and column-indexed by target vertex (the m^{(n)}_{i,j} convention).
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const = default;

    /// Entrywise sum.
    IntMatrix operator+(const IntMatrix& other) const {
        require_same_shape(other);
        IntMatrix out(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] + other.data_[k];
        return out;
    }

    /// Entrywise difference; entries may go negative, callers check.
    IntMatrix operator-(const IntMatrix& other) const {
        require_same_shape(other);
        IntMatrix out(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] - other.data_[k];
        return out;
    }

    /// Matrix product in source-by-target layout: (A*B)(i,k) composes a map
    /// through A's targets, so A.cols() must equal B.rows().
    IntMatrix operator*(const IntMatrix& other) const {
        if (cols_ != other.rows_) throw std::invalid_argument("IntMatrix product: shape mismatch");
        IntMatrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const BigInt& a = (*this)(i, j);
                if (a == 0) continue;
                for (std::size_t k = 0; k < other.cols_; ++k)
                    out(i, k) += a * other(j, k);
            }
        return out;
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    bool all_nonnegative() const {
        for (const auto& v : data_)
            if (v < 0) return false;
        return true;
    }

private:
    void require_same_shape(const IntMatrix& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument("IntMatrix: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

/// Action of a multiplicity matrix on a size vector: target entry j is
/// the sum over sources i of M(i,j) * v[i].
inline IntVector apply(const IntMatrix& m, const IntVector& v) {
    if (v.size() != m.rows()) throw std::invalid_argument("apply: vector length mismatch");
    IntVector out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            out[j] += m(i, j) * v[i];
    return out;
}

inline Rational sup_norm(const RationalVector& v) {
    Rational m = 0;
    for (const auto& x : v) {
        Rational a = x < 0 ? Rational(-x) : x;
        if (a > m) m = a;
    }
    return m;
}

/// Canonical rendering: lowest terms (maintained by cpp_rational), positive
/// denominator, "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1)
        return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

/// Decimal rendering with a fixed number of digits, round-to-nearest.
/// For display only; never feeds back into a computation.
inline std::string to_decimal(const Rational& q, unsigned digits = 12) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    BigInt scaled = (num * scale * 2 + den) / (den * 2);  // rounded
    BigInt ip = scaled / scale, fp = scaled % scale;
    std::string frac = fp.str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string out = (neg && (ip != 0 || fp != 0) ? "-" : "") + ip.str();
    if (digits > 0) out += "." + frac;
    return out;
}

}  // namespace villab
