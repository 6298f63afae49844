#pragma once

// Finite-stage trace simplices, the section {tau(p) = 1} cut by a projection,
// and the radius of comparison of the corner algebra via the max-over-vertices
// formula: the section of the simplicial cone over the stage-m simplex has
// vertices tau_j / tau_j(p), and an affine function attains its max over a
// simplex at a vertex.

#include <villab/ratios.hpp>

#include <cstddef>

namespace villab {

/// Trivial projection class at a stage: one rank per summand.
struct CornerProjection {
    std::size_t stage = 1;
    IntVector ranks;

    /// ranks fit in the summands (ranks[j] <= u~_{stage,j}), not all zero.
    void validate(const VilladsenSystem& system) const;
};

/// Values of the stage-m extreme traces on p:
/// entry j = (sum_i total_{i,j} * ranks_i) / u~_{m,j}.
RationalVector trace_of_projection(const VilladsenSystem& system, const CornerProjection& p,
                                   std::size_t at);

struct CornerRcResult {
    Rational rc_upper;       // max_j r_{m,j} / tau_j(p)
    Rational rc_lower;       // same with r_m reduced by the largest observed Cauchy decrement
    std::size_t argmax_vertex = 0;  // 0-based; ties broken toward the smallest index
    RationalVector trace_vector;
};

/// Finite-stage surrogate of rc(p(A(x)K)p).  Requires p full at stage m
/// (all trace entries positive); otherwise the section is unbounded.
CornerRcResult rc_corner(const VilladsenSystem& system, const CornerProjection& p, std::size_t at);

}  // namespace villab
