#pragma once

// The two-vertex Hirshberg-Phillips family: two UHF-type towers coupled by
// cross point evaluations.  Computes the compression coefficients of the
// induced affine maps on [0,1], the surviving gap of the extreme-point
// coordinates, the comparison-radius values at the two extreme traces, and
// the flip obstruction (no automorphism can swap the extremes when the two
// limit values are certifiably different).

#include <villab/ratios.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace villab {

struct HPParams {
    std::uint64_t dim = 0;
    std::vector<std::uint64_t> n1, n2;       // coordinate multiplicities per tower
    std::vector<std::uint64_t> k1, k2;       // self evaluations
    std::vector<std::uint64_t> k12, k21;     // k12: tower 1 -> tower 2; k21 the reverse

    std::size_t num_levels() const { return n1.size(); }

    /// All six sequences must share a length >= 1; entries of n positive.
    void validate() const;

    /// Expansion to the generic 2-vertex system: M_i = diag(n1_i, n2_i),
    /// E_i(source, target) with E(1,2) = k12_i and E(2,1) = k21_i.
    VilladsenSystem to_system() const;
};

/// Compression coefficients c_i of the induced maps on [0,1]; each lies in
/// (-1, 1], and c_i = 1 exactly when k12_i = k21_i = 0.
RationalVector compression_coefficients(const HPParams& params);

struct ExtremeCoordinates {
    RationalVector gaps;        // gap_i = prod_{m >= i} c_m over the truncation
    Rational full_product;      // c_1 c_2 ... c_L
    bool above_threshold = false;
};

/// Finite-truncation surrogate of the extreme-point coordinates: only the
/// partial products of the c_i are computable; the true s_i, t_i need the
/// infinite tail.  Errors out if some c_i <= 0 (the ordering of the extreme
/// preimages is lost).
ExtremeCoordinates extreme_coordinates(const HPParams& params, const Rational& threshold = 0);

struct Bracket {
    Rational lower;
    Rational upper;

    bool disjoint_from(const Bracket& other) const {
        return upper < other.lower || other.upper < lower;
    }
};

/// Last-stage values of (dim/2) u_{i,v}/u~_{i,v} at the two extremes,
/// bracketed downward by the largest observed one-step decrement.
std::pair<Bracket, Bracket> r_infinity_at_extremes(const HPParams& params);

struct FlipReport {
    Bracket r_at_tau1, r_at_tau2;
    bool obstructed = false;
    std::string verdict;  // "flip obstructed" or "inconclusive"
};

/// Flip obstruction: certified only by disjoint exact-rational brackets.
FlipReport flip_obstruction(const HPParams& params);

}  // namespace villab
