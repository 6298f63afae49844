#pragma once

// Composed multiplicity matrices, the size vectors u_n / u~_n, the stagewise
// half-dimension-ratio functions, pushforwards of affine functions along the
// diagram, and the rapid-growth / uniform-Cauchy diagnostics.
//
// An affine function on the stage-n trace simplex is represented by its
// values on the s_n extreme traces (StageAffine).  All arithmetic is exact.

#include <villab/core_model.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace villab {

/// Affine function on the stage-n trace simplex, by vertex values.
struct StageAffine {
    std::size_t stage = 1;
    RationalVector values;

    bool operator==(const StageAffine&) const = default;
};

/// Multiplicity matrices of the partial maps between two stages.
/// total = product of per-level (M+E), phi = product of per-level M,
/// eval = total - phi (entrywise, always nonnegative).
struct ComposedMultiplicities {
    std::size_t from = 0, to = 0;
    IntMatrix phi;
    IntMatrix eval;
    IntMatrix total;
};

/// Compose the connecting maps from stage i to stage j (1 <= i < j <= stages).
ComposedMultiplicities compose(const VilladsenSystem& system, std::size_t i, std::size_t j);

/// Size vectors before / after adding point evaluations; u~_1 = u_1.
IntVector compute_u(const VilladsenSystem& system, std::size_t n);
IntVector compute_u_tilde(const VilladsenSystem& system, std::size_t n);

/// Half-dimension ratios r_{n,j} = (dim(X)/2) * u_{n,j} / u~_{n,j}.
StageAffine r0_stage(const VilladsenSystem& system, std::size_t n);

/// Dual action of the connecting maps on affine functions:
/// component j = (1/u~_{to,j}) * sum_i total_{i,j} * u~_{from,i} * h_i.
StageAffine pushforward(const VilladsenSystem& system, const StageAffine& h, std::size_t to);

enum class GrowthVerdict { ConsistentWithRapidGrowth, Inconclusive, Violated };

std::string to_string(GrowthVerdict v);

/// Per-stage-pair (i, last) quantities of the Cauchy diagnostics.
struct StagePairDiagnostics {
    std::size_t stage = 0;  // i; the deep stage is always the last one
    Rational pushforward_gap_sup;  // ||pushforward(r_i) - r_last||_inf
    Rational pushforward_gap_min;  // min_j of the same difference (>= 0 iff monotone)
    Rational cauchy_over_u;        // max_j (E_{i,last} u_i)_j / u~_{last,j}
    Rational cauchy_over_u_tilde;  // max_j (E_{i,last} u~_i)_j / u~_{last,j}
};

struct RapidGrowthReport {
    std::vector<StagePairDiagnostics> pairs;
    Rational delta_min;   // min over stages/vertices of r_{i,j}
    Rational last_stage_quantity;  // cauchy_over_u_tilde at the deepest i
    GrowthVerdict verdict = GrowthVerdict::Inconclusive;
    bool positivity_risk = false;  // min_j r_{last,j} < 10^-2 * dim/2
    Rational tolerance;
};

/// Diagnostics for every pair (i, last).  "violated" only if the exact
/// monotone-decrease check fails (a self-test; it cannot on valid data);
/// "consistent" when the deepest Cauchy quantity is below the tolerance.
RapidGrowthReport rapid_growth_report(const VilladsenSystem& system,
                                      const Rational& tolerance = Rational(1, 1000));

/// Serial reference for the diagnostics loop; the default entry point runs
/// the same per-pair kernel under OpenMP.  Kept for testing and benchmarks.
RapidGrowthReport rapid_growth_report_serial(const VilladsenSystem& system,
                                             const Rational& tolerance = Rational(1, 1000));

}  // namespace villab
