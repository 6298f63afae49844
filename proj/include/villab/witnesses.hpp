#pragma once

// Integer/rational witness arithmetic from the minimality proofs: given a
// candidate gap function sitting below r at some stage, assemble the
// finite-stage witness parameters (integer ranks d_j, test-projection trace
// window, Chern-degree bookkeeping, the trivial-subbundle trace bound) and
// check the decisive inequality chain exactly.
//
// Every emitted report is a self-verifying certificate: each inequality is
// stored with its exact rational sides and can be re-validated with no
// reference to the construction that produced it.

#include <villab/ratios.hpp>

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace villab {

/// One checked inequality, exact sides included.
struct CheckedInequality {
    std::string name;
    Rational lhs;
    Rational rhs;
    bool strict = true;  // lhs < rhs (or <= when false)
    bool holds() const { return strict ? lhs < rhs : lhs <= rhs; }
};

enum class WitnessVerdict { Pass, Fail, DeepenDiagram };

struct WitnessReport {
    std::size_t stage_n = 0;     // stage carrying h and the ranks d_j
    std::size_t stage_k = 0;     // deeper stage where the bound is evaluated
    std::size_t witness_vertex = 0;  // j_k, 0-based
    Rational delta;              // finite-stage gap sup max_j (r_{n,j} - h_j)
    Rational eps;
    Rational m_bound;            // M = max_j h_j
    std::set<std::size_t> small_gap_vertices;  // S = {j : r_{n,j} - h_j <= delta/4}
    IntVector d;                 // integer ranks, delta/8 < d_j/u~_{n,j} - h_j < delta/4
    Rational q_trace_lower, q_trace_upper;  // (delta/32, delta/16)
    BigInt chern_degree;         // 2 * sum_{i not in S} phi_{i,j_k} d_i
    BigInt trivial_rank_bound;
    Rational trivial_trace_bound;
    std::vector<CheckedInequality> checks;
    WitnessVerdict verdict = WitnessVerdict::Fail;
    std::string detail;

    bool all_checks_hold() const {
        for (const auto& c : checks)
            if (!c.holds()) return false;
        return true;
    }
};

/// Build a non-comparison witness for h given at a stage.  eps <= 0 selects
/// the default: half of the largest value admitted by the small-eps bound.
/// Errors: h dominating r at its stage (delta <= 0) throws; a diagram too
/// shallow for the integer ranks or the deep-stage bounds yields
/// DeepenDiagram, never a heuristic pass.
WitnessReport build_witness(const VilladsenSystem& system, const StageAffine& h,
                            const Rational& eps = Rational(0));

/// Normalized-trace upper bound for the trivial part of the pushed
/// projection, AF form: per target vertex j at stage t,
/// (1/u~_{t,j}) (sum_{i in S} total_{i,j} d_i + sum_{i not in S} eval_{i,j} d_i);
/// returns the value at the worst (maximal) vertex.
Rational trivial_subbundle_trace_bound(const VilladsenSystem& system, std::size_t s,
                                       std::size_t t, const IntVector& d_profile,
                                       const std::set<std::size_t>& small_gap_vertices);

/// Single-vertex UHF form of the same bound: 1 - prod_{(s,t]} n/(n+k).
Rational trivial_subbundle_trace_bound_uhf(const std::vector<std::uint64_t>& n_seq,
                                           const std::vector<std::uint64_t>& k_seq,
                                           std::size_t s, std::size_t t);

enum class GapClassification { CertifiedNotGap, DominatesAtTruncation, Indeterminate };

std::string to_string(GapClassification c);

struct GapCheckResult {
    GapClassification classification = GapClassification::Indeterminate;
    WitnessReport witness;  // populated when certified-not-gap
};

/// Classify a candidate gap function against the truncated data.  Sound by
/// construction: h >= r_last entrywise is reported as dominating and a
/// witness is never attempted for it.
GapCheckResult check_gap_function(const VilladsenSystem& system, const StageAffine& h);

}  // namespace villab
