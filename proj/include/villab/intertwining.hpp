#pragma once

// Feasibility checker for the integer multiplicity inequalities of the
// approximate-intertwining construction: given K0 intertwining
// multiplicities m, find the entrywise-smallest integer matrix delta with
// (1-2d')m < delta < (1-d')m entrywise and per-column size-vector room
// sum_i u_src_i delta_{i,j} < u_tgt_bound_j, or name the violated constraint.

#include <villab/core_model.hpp>

#include <string>
#include <variant>

namespace villab {

struct IntertwineInstance {
    IntMatrix m;            // positive multiplicities, source-by-target
    IntVector u_src;        // source size vector
    IntVector u_tgt_bound;  // per-target-column upper bounds
    Rational delta_prime;   // in (0, 1/2)

    void validate() const;
};

struct Infeasible {
    std::string violated_constraint;
};

/// Either the entrywise-minimal admissible integer matrix (deterministic) or
/// the named constraint that cannot be met.  The column-sum constraint is
/// monotone in delta, so checking it at the minimal choice is exact.
std::variant<IntMatrix, Infeasible> find_projection_multiplicities(
    const IntertwineInstance& inst);

}  // namespace villab
