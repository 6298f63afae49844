#include <villab/witnesses.hpp>

#include <algorithm>

namespace villab {

namespace {

// Smallest integer strictly inside the open interval (lo, hi), if any.
bool smallest_integer_in(const Rational& lo, const Rational& hi, BigInt& out) {
    BigInt num = boost::multiprecision::numerator(lo);
    BigInt den = boost::multiprecision::denominator(lo);
    // floor(lo) for possibly-negative lo, then step past lo.
    BigInt fl = num >= 0 ? num / den : -((-num + den - 1) / den);
    BigInt cand = fl + 1;
    if (Rational(cand) <= lo) ++cand;  // lo integral
    if (Rational(cand) >= hi) return false;
    out = cand;
    return true;
}

Rational max_entry(const RationalVector& v) {
    return *std::max_element(v.begin(), v.end());
}

}  // namespace

Rational trivial_subbundle_trace_bound(const VilladsenSystem& system, std::size_t s,
                                       std::size_t t, const IntVector& d_profile,
                                       const std::set<std::size_t>& small_gap_vertices) {
    if (s >= t)
        throw ValidationError("trivial_subbundle_trace_bound: need s < t");
    if (d_profile.size() != system.vertex_count(s))
        throw ValidationError("trivial_subbundle_trace_bound: rank profile length mismatch");
    auto cm = compose(system, s, t);
    IntVector ut = compute_u_tilde(system, t);
    Rational worst = 0;
    for (std::size_t j = 0; j < ut.size(); ++j) {
        BigInt acc = 0;
        for (std::size_t i = 0; i < d_profile.size(); ++i)
            acc += (small_gap_vertices.count(i) ? cm.total(i, j) : cm.eval(i, j)) * d_profile[i];
        worst = std::max(worst, Rational(acc, ut[j]));
    }
    return worst;
}

Rational trivial_subbundle_trace_bound_uhf(const std::vector<std::uint64_t>& n_seq,
                                           const std::vector<std::uint64_t>& k_seq,
                                           std::size_t s, std::size_t t) {
    if (n_seq.size() != k_seq.size())
        throw ValidationError("uhf: n and k sequences have different lengths");
    if (s >= t || t > n_seq.size())
        throw ValidationError("trivial_subbundle_trace_bound_uhf: need s < t within data");
    // product over the levels in (s, t], 1-based
    BigInt num = 1, den = 1;
    for (std::size_t m = s + 1; m <= t; ++m) {
        num *= n_seq[m - 1];
        den *= BigInt(n_seq[m - 1]) + k_seq[m - 1];
    }
    return Rational(1) - Rational(num, den);
}

WitnessReport build_witness(const VilladsenSystem& system, const StageAffine& h,
                            const Rational& eps_in) {
    system.seed.require_positive_dim();
    if (!system.seed.solid || !system.seed.connected)
        throw ValidationError("build_witness: the construction requires a solid, connected seed");
    const std::size_t n = h.stage;
    if (h.values.size() != system.vertex_count(n))
        throw ValidationError("build_witness: h length mismatch at stage " + std::to_string(n));
    const std::size_t last = system.num_stages();
    const std::size_t s_n = h.values.size();

    WitnessReport rep;
    rep.stage_n = n;

    StageAffine r_n = r0_stage(system, n);
    RationalVector gap(s_n);
    for (std::size_t j = 0; j < s_n; ++j) gap[j] = r_n.values[j] - h.values[j];
    rep.delta = max_entry(gap);
    if (rep.delta <= 0)
        throw ValidationError("no witness exists: h dominates r at stage " + std::to_string(n));

    rep.m_bound = max_entry(h.values);
    Rational m_plus_1 = rep.m_bound + 1;
    if (m_plus_1 <= 0)
        throw ValidationError("build_witness: max of h must exceed -1");

    // Default eps: half the largest value allowed by the small-eps bound
    // 2e/(delta + 3e/4) < delta/(64(M+1)).
    if (eps_in > 0) {
        rep.eps = eps_in;
    } else {
        Rational denom = Rational(128) * m_plus_1 - Rational(3, 4) * rep.delta;
        rep.eps = (rep.delta * rep.delta / denom) / 2;
    }
    const Rational over_bound = rep.delta / (64 * m_plus_1);
    rep.checks.push_back({"small-eps: 2e/(d+3e/4) < d/(64(M+1))",
                          2 * rep.eps / (rep.delta + Rational(3, 4) * rep.eps), over_bound});

    for (std::size_t j = 0; j < s_n; ++j)
        if (gap[j] <= rep.delta / 4) rep.small_gap_vertices.insert(j);

    IntVector u_n = compute_u(system, n);
    IntVector ut_n = compute_u_tilde(system, n);

    // Integer ranks d_j in the open window (u~(h_j + d/8), u~(h_j + d/4)),
    // and the q-trace window (u~ d/32, u~ d/16) must both be nonempty.
    rep.d.resize(s_n);
    for (std::size_t j = 0; j < s_n; ++j) {
        Rational lo = Rational(ut_n[j]) * (h.values[j] + rep.delta / 8);
        Rational hi = Rational(ut_n[j]) * (h.values[j] + rep.delta / 4);
        BigInt d_j;
        if (!smallest_integer_in(lo, hi, d_j) || d_j < 1) {
            rep.verdict = WitnessVerdict::DeepenDiagram;
            rep.detail = "deepen the diagram: no integer rank in the large-u window at stage " +
                         std::to_string(n) + ", vertex " + std::to_string(j + 1);
            return rep;
        }
        rep.d[j] = d_j;
    }
    rep.q_trace_lower = rep.delta / 32;
    rep.q_trace_upper = rep.delta / 16;

    for (std::size_t j = 0; j < s_n; ++j) {
        const std::string v = " (vertex " + std::to_string(j + 1) + ")";
        Rational ratio = Rational(rep.d[j], ut_n[j]) - h.values[j];
        rep.checks.push_back({"ratn-appro lower: d/8 < d_j/u~ - h_j" + v, rep.delta / 8, ratio});
        rep.checks.push_back({"ratn-appro upper: d_j/u~ - h_j < d/4" + v, ratio, rep.delta / 4});
        rep.checks.push_back({"small-d-1: d_j < (M+1)u~" + v, Rational(rep.d[j]),
                              m_plus_1 * Rational(ut_n[j])});
        if (!rep.small_gap_vertices.count(j))
            rep.checks.push_back({"chern-room: 2d_j < u_j dim(X)" + v, Rational(2 * rep.d[j]),
                                  Rational(u_n[j] * system.seed.dim)});
    }

    if (!rep.all_checks_hold()) {
        rep.verdict = WitnessVerdict::Fail;
        rep.detail = "stage-n inequality failed";
        return rep;
    }
    if (n >= last) {
        rep.verdict = WitnessVerdict::DeepenDiagram;
        rep.detail = "deepen the diagram: no stage beyond " + std::to_string(n);
        return rep;
    }

    // h really must sit below r at the deepest available stage; r_last is an
    // upper bound for the limit, so this is the honest necessary condition.
    {
        StageAffine h_last = pushforward(system, h, last);
        StageAffine r_last = r0_stage(system, last);
        Rational best = r_last.values[0] - h_last.values[0];
        for (std::size_t j = 1; j < r_last.values.size(); ++j)
            best = std::max(best, r_last.values[j] - h_last.values[j]);
        if (best <= 0) {
            rep.verdict = WitnessVerdict::Fail;
            rep.detail = "h is not below r at the deepest stage; no witness certified";
            return rep;
        }
    }

    // Deep-stage checks: search increasing k, keep the first stage where the
    // whole chain closes; otherwise report the deepest attempt.
    const std::size_t base_checks = rep.checks.size();
    for (std::size_t k = n + 1; k <= last; ++k) {
        rep.checks.resize(base_checks);
        rep.stage_k = k;

        auto cm = compose(system, n, k);
        StageAffine h_k = pushforward(system, h, k);
        StageAffine rp_k = pushforward(system, r_n, k);
        IntVector ut_k = compute_u_tilde(system, k);

        std::size_t j_k = 0;
        Rational best = rp_k.values[0] - h_k.values[0];
        for (std::size_t j = 1; j < ut_k.size(); ++j) {
            Rational g = rp_k.values[j] - h_k.values[j];
            if (g > best) {
                best = g;
                j_k = j;
            }
        }
        rep.witness_vertex = j_k;
        rep.checks.push_back({"gap survives at j_k: d - e < r_k - h_k", rep.delta - rep.eps,
                              best});

        // the test projection q needs an integer rank with normalized trace
        // inside (delta/32, delta/16) at this stage
        BigInt q_rank;
        if (!smallest_integer_in(Rational(ut_k[j_k]) * rep.delta / 32,
                                 Rational(ut_k[j_k]) * rep.delta / 16, q_rank))
            continue;

        BigInt s_mass = 0;
        for (std::size_t i : rep.small_gap_vertices) s_mass += cm.total(i, j_k) * ut_n[i];
        rep.checks.push_back({"small-over: gamma < d/(64(M+1))", Rational(s_mass, ut_k[j_k]),
                              over_bound});

        Rational eval_mass = 0;
        for (std::size_t j = 0; j < ut_k.size(); ++j) {
            BigInt acc = 0;
            for (std::size_t i = 0; i < s_n; ++i) acc += cm.eval(i, j) * ut_n[i];
            eval_mass = std::max(eval_mass, Rational(acc, ut_k[j]));
        }
        rep.checks.push_back({"far-2: evaluation mass < d/(64(M+1))", eval_mass, over_bound});

        BigInt chern = 0, total_d = 0, phi_outside = 0;
        for (std::size_t i = 0; i < s_n; ++i) {
            total_d += cm.total(i, j_k) * rep.d[i];
            if (!rep.small_gap_vertices.count(i)) {
                chern += cm.phi(i, j_k) * rep.d[i];
                phi_outside += cm.phi(i, j_k) * rep.d[i];
            }
        }
        rep.chern_degree = 2 * chern;
        rep.trivial_rank_bound = total_d - phi_outside;
        rep.trivial_trace_bound = Rational(rep.trivial_rank_bound, ut_k[j_k]);
        rep.checks.push_back({"trivial trace < d/32 (q not subequivalent to p)",
                              rep.trivial_trace_bound, rep.q_trace_lower});

        if (rep.all_checks_hold()) {
            rep.verdict = WitnessVerdict::Pass;
            rep.detail = "witness certified at stages (" + std::to_string(n) + ", " +
                         std::to_string(k) + ")";
            return rep;
        }
    }

    rep.verdict = WitnessVerdict::DeepenDiagram;
    rep.detail = "deepen the diagram: inequality chain does not close by stage " +
                 std::to_string(last);
    return rep;
}

std::string to_string(GapClassification c) {
    switch (c) {
        case GapClassification::CertifiedNotGap: return "certified-not-gap";
        case GapClassification::DominatesAtTruncation: return "dominates-r-at-truncation";
        case GapClassification::Indeterminate: return "indeterminate";
    }
    return "?";
}

GapCheckResult check_gap_function(const VilladsenSystem& system, const StageAffine& h) {
    const std::size_t last = system.num_stages();
    StageAffine h_last = h.stage == last ? h : pushforward(system, h, last);
    StageAffine r_last = r0_stage(system, last);

    GapCheckResult out;
    bool dominates = true;
    for (std::size_t j = 0; j < r_last.values.size(); ++j)
        if (h_last.values[j] < r_last.values[j]) dominates = false;
    if (dominates) {
        out.classification = GapClassification::DominatesAtTruncation;
        return out;
    }

    for (std::size_t n = h.stage; n < last; ++n) {
        StageAffine h_n = n == h.stage ? h : pushforward(system, h, n);
        try {
            WitnessReport rep = build_witness(system, h_n);
            if (rep.verdict == WitnessVerdict::Pass) {
                out.classification = GapClassification::CertifiedNotGap;
                out.witness = std::move(rep);
                return out;
            }
        } catch (const ValidationError&) {
            // h dominates r at this particular stage; try deeper.
        }
    }
    out.classification = GapClassification::Indeterminate;
    return out;
}

}  // namespace villab
