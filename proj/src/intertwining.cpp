#include <villab/intertwining.hpp>

namespace villab {

void IntertwineInstance::validate() const {
    if (m.rows() == 0 || m.cols() == 0) throw ValidationError("intertwine: empty matrix");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) <= 0)
                throw ValidationError("intertwine: m(" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ") must be positive");
    if (u_src.size() != m.rows())
        throw ValidationError("intertwine: u_src length must match rows of m");
    if (u_tgt_bound.size() != m.cols())
        throw ValidationError("intertwine: u_tgt_bound length must match columns of m");
    if (delta_prime <= 0 || delta_prime >= Rational(1, 2))
        throw ValidationError("intertwine: delta' must lie in (0, 1/2)");
}

std::variant<IntMatrix, Infeasible> find_projection_multiplicities(
    const IntertwineInstance& inst) {
    inst.validate();
    const Rational lo_f = 1 - 2 * inst.delta_prime;
    const Rational hi_f = 1 - inst.delta_prime;

    IntMatrix delta(inst.m.rows(), inst.m.cols());
    for (std::size_t i = 0; i < inst.m.rows(); ++i)
        for (std::size_t j = 0; j < inst.m.cols(); ++j) {
            Rational lo = lo_f * Rational(inst.m(i, j));
            Rational hi = hi_f * Rational(inst.m(i, j));
            // Smallest integer strictly above lo; lo > 0 here.
            BigInt cand = boost::multiprecision::numerator(lo) /
                          boost::multiprecision::denominator(lo) + 1;
            if (Rational(cand) <= lo) ++cand;
            if (Rational(cand) >= hi || cand < 1)
                return Infeasible{"empty interval ((1-2d')m, (1-d')m) at entry (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  "): no integer in (" + to_string(lo) + ", " + to_string(hi) +
                                  ")"};
            delta(i, j) = cand;
        }

    for (std::size_t j = 0; j < inst.m.cols(); ++j) {
        BigInt sum = 0;
        for (std::size_t i = 0; i < inst.m.rows(); ++i) sum += inst.u_src[i] * delta(i, j);
        if (sum >= inst.u_tgt_bound[j])
            return Infeasible{"column-sum bound violated at column " + std::to_string(j + 1) +
                              ": minimal sum " + sum.str() + " >= bound " +
                              inst.u_tgt_bound[j].str()};
    }
    return delta;
}

}  // namespace villab
