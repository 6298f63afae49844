#include <villab/ratios.hpp>

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace villab {

ComposedMultiplicities compose(const VilladsenSystem& system, std::size_t i, std::size_t j) {
    if (i < 1 || j <= i || j > system.num_stages())
        throw ValidationError("compose: need 1 <= i < j <= " +
                              std::to_string(system.num_stages()) + ", got i=" +
                              std::to_string(i) + ", j=" + std::to_string(j));
    ComposedMultiplicities out;
    out.from = i;
    out.to = j;
    out.phi = system.levels[i - 1].M;
    out.total = system.levels[i - 1].M + system.levels[i - 1].E;
    for (std::size_t n = i + 1; n < j; ++n) {
        out.phi = out.phi * system.levels[n - 1].M;
        out.total = out.total * (system.levels[n - 1].M + system.levels[n - 1].E);
    }
    out.eval = out.total - out.phi;
    return out;
}

IntVector compute_u(const VilladsenSystem& system, std::size_t n) {
    system.vertex_count(n);  // range check
    IntVector u = system.u1;
    for (std::size_t s = 1; s < n; ++s) u = villab::apply(system.levels[s - 1].M, u);
    return u;
}

IntVector compute_u_tilde(const VilladsenSystem& system, std::size_t n) {
    system.vertex_count(n);
    IntVector u = system.u1;
    for (std::size_t s = 1; s < n; ++s)
        u = villab::apply(system.levels[s - 1].M + system.levels[s - 1].E, u);
    return u;
}

StageAffine r0_stage(const VilladsenSystem& system, std::size_t n) {
    system.seed.require_positive_dim();
    IntVector u = compute_u(system, n);
    IntVector ut = compute_u_tilde(system, n);
    StageAffine r{n, RationalVector(u.size())};
    const Rational half_dim(system.seed.dim, 2);
    for (std::size_t j = 0; j < u.size(); ++j)
        r.values[j] = half_dim * Rational(u[j], ut[j]);
    return r;
}

StageAffine pushforward(const VilladsenSystem& system, const StageAffine& h, std::size_t to) {
    if (h.stage >= to)
        throw ValidationError("pushforward: target stage " + std::to_string(to) +
                              " must exceed source stage " + std::to_string(h.stage));
    if (h.values.size() != system.vertex_count(h.stage))
        throw ValidationError("pushforward: affine function length mismatch at stage " +
                              std::to_string(h.stage));
    auto cm = compose(system, h.stage, to);
    IntVector ut_from = compute_u_tilde(system, h.stage);
    IntVector ut_to = compute_u_tilde(system, to);
    StageAffine out{to, RationalVector(ut_to.size())};
    for (std::size_t j = 0; j < ut_to.size(); ++j) {
        Rational acc = 0;
        for (std::size_t i = 0; i < ut_from.size(); ++i)
            acc += Rational(cm.total(i, j) * ut_from[i]) * h.values[i];
        out.values[j] = acc / Rational(ut_to[j]);
    }
    return out;
}

std::string to_string(GrowthVerdict v) {
    switch (v) {
        case GrowthVerdict::ConsistentWithRapidGrowth: return "consistent-with-rapid-growth";
        case GrowthVerdict::Inconclusive: return "inconclusive";
        case GrowthVerdict::Violated: return "violated";
    }
    return "?";
}

namespace {

StagePairDiagnostics pair_diagnostics(const VilladsenSystem& system, std::size_t i,
                                      std::size_t last, const StageAffine& r_last) {
    StagePairDiagnostics d;
    d.stage = i;
    StageAffine pushed = pushforward(system, r0_stage(system, i), last);
    RationalVector diff(pushed.values.size());
    for (std::size_t j = 0; j < diff.size(); ++j)
        diff[j] = pushed.values[j] - r_last.values[j];
    d.pushforward_gap_sup = sup_norm(diff);
    d.pushforward_gap_min = *std::min_element(diff.begin(), diff.end());

    auto cm = compose(system, i, last);
    IntVector u_i = compute_u(system, i);
    IntVector ut_i = compute_u_tilde(system, i);
    IntVector ut_last = compute_u_tilde(system, last);
    IntVector ev_u = villab::apply(cm.eval, u_i);
    IntVector ev_ut = villab::apply(cm.eval, ut_i);
    for (std::size_t j = 0; j < ut_last.size(); ++j) {
        d.cauchy_over_u = std::max(d.cauchy_over_u, Rational(ev_u[j], ut_last[j]));
        d.cauchy_over_u_tilde = std::max(d.cauchy_over_u_tilde, Rational(ev_ut[j], ut_last[j]));
    }
    return d;
}

RapidGrowthReport build_report(const VilladsenSystem& system, const Rational& tolerance,
                               bool parallel) {
    if (system.levels.empty())
        throw ValidationError("rapid_growth_report: need at least 2 stages");
    system.seed.require_positive_dim();

    const std::size_t last = system.num_stages();
    RapidGrowthReport rep;
    rep.tolerance = tolerance;
    rep.pairs.resize(last - 1);
    StageAffine r_last = r0_stage(system, last);

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 1; i < static_cast<long long>(last); ++i)
            rep.pairs[i - 1] = pair_diagnostics(system, static_cast<std::size_t>(i), last, r_last);
    } else {
        for (std::size_t i = 1; i < last; ++i)
            rep.pairs[i - 1] = pair_diagnostics(system, i, last, r_last);
    }

    rep.delta_min = Rational(system.seed.dim, 2);
    for (std::size_t i = 1; i <= last; ++i)
        for (const auto& v : r0_stage(system, i).values)
            rep.delta_min = std::min(rep.delta_min, v);

    rep.last_stage_quantity = rep.pairs.back().cauchy_over_u_tilde;

    bool monotone_ok = true;
    for (const auto& p : rep.pairs)
        if (p.pushforward_gap_min < 0) monotone_ok = false;
    if (!monotone_ok)
        rep.verdict = GrowthVerdict::Violated;
    else if (rep.last_stage_quantity < tolerance)
        rep.verdict = GrowthVerdict::ConsistentWithRapidGrowth;
    else
        rep.verdict = GrowthVerdict::Inconclusive;

    Rational r_last_min = r_last.values[0];
    for (const auto& v : r_last.values) r_last_min = std::min(r_last_min, v);
    rep.positivity_risk = r_last_min < Rational(1, 100) * Rational(system.seed.dim, 2);
    return rep;
}

}  // namespace

RapidGrowthReport rapid_growth_report(const VilladsenSystem& system, const Rational& tolerance) {
    return build_report(system, tolerance, true);
}

RapidGrowthReport rapid_growth_report_serial(const VilladsenSystem& system,
                                             const Rational& tolerance) {
    return build_report(system, tolerance, false);
}

}  // namespace villab
