// Acceptance gate: one check per criterion, one pass/fail line each.
// Usage: acceptance <source-dir> [cli-path]
// The source dir locates samples/ and the CLI binary for the determinism run.

#include <villab/compare.hpp>
#include <villab/core_model.hpp>
#include <villab/hp_family.hpp>
#include <villab/intertwining.hpp>
#include <villab/ratios.hpp>
#include <villab/trace_geometry.hpp>
#include <villab/uhf_locdim.hpp>
#include <villab/witnesses.hpp>

#include "helpers.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace villab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what;
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!ok) ++g_failures;
}

std::vector<VilladsenSystem> corpus50() {
    std::mt19937 rng(987654321);
    std::vector<VilladsenSystem> out;
    for (int t = 0; t < 50; ++t) out.push_back(testutil::random_system(rng, 4, 6, 9));
    return out;
}

// --- criterion 1: exact recursions --------------------------------------

void criterion1(const std::vector<VilladsenSystem>& corpus) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const auto& sys : corpus) {
        const std::size_t last = sys.num_stages();
        // u / u~ vs direct matrix-product oracle
        IntMatrix phi = IntMatrix::identity(sys.u1.size());
        IntMatrix total = phi;
        for (std::size_t n = 1; n <= last && ok; ++n) {
            if (n > 1) {
                phi = phi * sys.levels[n - 2].M;
                total = total * (sys.levels[n - 2].M + sys.levels[n - 2].E);
            }
            if (compute_u(sys, n) != villab::apply(phi, sys.u1) ||
                compute_u_tilde(sys, n) != villab::apply(total, sys.u1)) {
                ok = false;
                detail = "u recursion disagrees with the matrix-product oracle";
            }
        }
        // compose functoriality
        for (std::size_t i = 1; i + 1 < last && ok; ++i)
            for (std::size_t j = i + 1; j < last && ok; ++j) {
                auto ij = compose(sys, i, j), jl = compose(sys, j, last),
                     il = compose(sys, i, last);
                if (il.total != ij.total * jl.total || il.phi != ij.phi * jl.phi) {
                    ok = false;
                    detail = "compose functoriality failed";
                }
            }
        // telescoping identity
        Rational half_dim(sys.seed.dim, 2);
        for (std::size_t i = 1; i < last && ok; ++i)
            for (std::size_t j = i + 1; j <= last && ok; ++j) {
                StageAffine lhs = pushforward(sys, r0_stage(sys, i), j);
                StageAffine rj = r0_stage(sys, j);
                IntVector ev = villab::apply(compose(sys, i, j).eval, compute_u(sys, i));
                IntVector ut = compute_u_tilde(sys, j);
                for (std::size_t v = 0; v < rj.values.size(); ++v)
                    if (lhs.values[v] - rj.values[v] != half_dim * Rational(ev[v], ut[v])) {
                        ok = false;
                        detail = "telescoping identity failed";
                    }
            }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 10.0) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + " s >= 10 s";
    }
    report(1, "exact recursions, functoriality, telescoping on 50 systems", ok, detail);
}

// --- criterion 2: monotonicity + lemma bound -----------------------------

void criterion2(const std::vector<VilladsenSystem>& corpus) {
    bool ok = true;
    std::string detail;
    for (const auto& sys : corpus) {
        const std::size_t last = sys.num_stages();
        for (std::size_t i = 1; i < last && ok; ++i)
            for (std::size_t j = i + 1; j <= last && ok; ++j) {
                StageAffine pushed = pushforward(sys, r0_stage(sys, i), j);
                StageAffine rj = r0_stage(sys, j);
                for (std::size_t v = 0; v < rj.values.size(); ++v)
                    if (pushed.values[v] < rj.values[v]) {
                        ok = false;
                        detail = "monotone decrease violated";
                    }
            }
        auto rep = rapid_growth_report(sys);
        Rational factor = Rational(sys.seed.dim, 2) / rep.delta_min;
        for (const auto& p : rep.pairs)
            if (p.cauchy_over_u_tilde > factor * p.cauchy_over_u) {
                ok = false;
                detail = "lemma bound violated at stage " + std::to_string(p.stage);
            }
    }
    report(2, "monotonicity and the Cauchy-quantity comparison bound on the same corpus", ok,
           detail);
}

// --- criterion 3: UHF tail bound -----------------------------------------

void criterion3() {
    std::mt19937 rng(13572468);
    std::uniform_int_distribution<std::uint64_t> nd(1, 5), kd(0, 3);
    std::uniform_int_distribution<std::size_t> len(2, 8);
    SeedSpace seed = testutil::wedge_seed();
    bool ok = true;
    std::string detail;
    for (int t = 0; t < 20 && ok; ++t) {
        std::size_t L = len(rng);
        std::vector<std::uint64_t> n, k;
        for (std::size_t i = 0; i < L; ++i) {
            n.push_back(nd(rng));
            k.push_back(kd(rng));
        }
        for (std::size_t s = 1; s <= L && ok; ++s)
            for (std::size_t tt = s + 1; tt <= L + 1 && ok; ++tt) {
                // |r_s - r_t| is maximized at the top-locdim Dirac profile
                Rational bound = tail_bound(n, k, seed.dim, s, tt);
                std::uint64_t ps = 1, pt = 1;
                for (std::size_t m = 0; m + 1 < s; ++m) ps *= n[m];
                for (std::size_t m = 0; m + 1 < tt; ++m) pt *= n[m];
                std::uint64_t scale = pt / ps;
                std::vector<std::uint64_t> samples = {0, ps / 3, ps / 2, ps};
                for (std::uint64_t cs : samples) {
                    if (!ok) break;
                    // extend the (ps - cs, cs) profile along the top stratum
                    Rational rs =
                        r_s_on_stratum(n, k, s, seed, StratumProfile{{ps - cs, cs}});
                    Rational rt = r_s_on_stratum(
                        n, k, tt, seed, StratumProfile{{(ps - cs) * scale, cs * scale}});
                    Rational diff = rs - rt;
                    if (diff < 0 || diff > bound) {
                        ok = false;
                        detail = "tail bound violated";
                    }
                }
                if (tt == s + 1 && ok) {
                    // one-step case: the bound equals (dim/2)(P_{s-1} - P_s)
                    Rational ps_prod(1), pt_prod(1);
                    for (std::size_t m = 0; m + 1 < s; ++m)
                        ps_prod *= Rational(n[m], n[m] + k[m]);
                    pt_prod = ps_prod * Rational(n[s - 1], n[s - 1] + k[s - 1]);
                    if (bound != Rational(seed.dim, 2) * (ps_prod - pt_prod)) {
                        ok = false;
                        detail = "one-step bound formula mismatch";
                    }
                }
            }
    }
    report(3, "UHF tail bound dominates |r_s - r_t| on 20 random (n,k)", ok, detail);
}

// --- criterion 4: rc formulas --------------------------------------------

Rational rc_grid_oracle(const VilladsenSystem& sys, const CornerProjection& p,
                        std::size_t at, int steps) {
    RationalVector tau = trace_of_projection(sys, p, at);
    RationalVector r = r0_stage(sys, at).values;
    std::size_t d = tau.size();
    Rational best(-1);
    std::vector<int> w(d, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
        if (idx + 1 == d) {
            w[idx] = left;
            Rational num(0), den(0);
            for (std::size_t j = 0; j < d; ++j) {
                num += Rational(w[j]) * r[j];
                den += Rational(w[j]) * tau[j];
            }
            Rational v = num / den;
            if (v > best) best = v;
            return;
        }
        for (int c = 0; c <= left; ++c) {
            w[idx] = c;
            rec(idx + 1, left - c);
        }
    };
    rec(0, steps);
    return best;
}

void criterion4() {
    std::mt19937 rng(24681357);
    bool ok = true;
    std::string detail;
    for (int t = 0; t < 15 && ok; ++t) {
        VilladsenSystem sys = testutil::random_system(rng, 3, 4);
        std::size_t m = sys.num_stages();
        IntVector ut = compute_u_tilde(sys, m);

        CornerProjection unit{m, ut};
        auto rc_unit = rc_corner(sys, unit, m);
        Rational max_r(0);
        for (const auto& v : r0_stage(sys, m).values)
            if (v > max_r) max_r = v;
        if (rc_unit.rc_upper != max_r) {
            ok = false;
            detail = "rc(unit) != max r";
        }

        CornerProjection p{m, {}};
        bool doubled_fits = true;
        for (const auto& u : ut) {
            BigInt r = u > 1 ? u / 2 : u;
            p.ranks.push_back(r);
            if (2 * r > u) doubled_fits = false;
        }
        auto rc = rc_corner(sys, p, m);
        Rational grid = rc_grid_oracle(sys, p, m, 64);
        // vertices are grid points, so the oracle attains the vertex max
        if (grid != rc.rc_upper || grid < rc.rc_upper - Rational(1, 64)) {
            ok = false;
            detail = "grid oracle disagrees with the vertex formula";
        }
        if (doubled_fits) {
            CornerProjection p2{m, {}};
            for (const auto& r : p.ranks) p2.ranks.push_back(2 * r);
            if (rc_corner(sys, p2, m).rc_upper != rc.rc_upper / 2) {
                ok = false;
                detail = "homogeneity failed";
            }
        }
    }
    report(4, "rc: grid oracle, unit formula, homogeneity", ok, detail);
}

// --- criterion 5: HP cross-check ------------------------------------------

void criterion5() {
    std::mt19937 rng(1122334455);
    std::uniform_int_distribution<std::uint64_t> nd(1, 9), kd(0, 4);
    std::uniform_int_distribution<std::size_t> len(1, 5);
    bool ok = true;
    std::string detail;
    for (int t = 0; t < 20 && ok; ++t) {
        HPParams p;
        p.dim = 2;
        std::size_t L = len(rng);
        for (std::size_t i = 0; i < L; ++i) {
            p.n1.push_back(nd(rng));
            p.n2.push_back(nd(rng));
            p.k1.push_back(kd(rng));
            p.k2.push_back(kd(rng));
            p.k12.push_back(kd(rng));
            p.k21.push_back(kd(rng));
        }
        VilladsenSystem sys = p.to_system();
        std::size_t last = sys.num_stages();
        auto [b1, b2] = r_infinity_at_extremes(p);
        StageAffine r = r0_stage(sys, last);
        if (b1.upper != r.values[0] || b2.upper != r.values[1]) {
            ok = false;
            detail = "extreme r values disagree with the generic pipeline";
        }
        IntVector ut = compute_u_tilde(sys, last);
        CornerProjection unit{last, ut};
        Rational max_r = r.values[0] > r.values[1] ? r.values[0] : r.values[1];
        if (rc_corner(sys, unit, last).rc_upper != max_r) {
            ok = false;
            detail = "HP unit rc disagrees";
        }
    }

    // asymmetric instance: certified obstruction
    HPParams asym;
    asym.dim = 2;
    std::uint64_t p10 = 1;
    for (int i = 0; i < 6; ++i) {
        p10 *= 10;
        asym.n1.push_back(p10);
        asym.n2.push_back(p10);
        asym.k1.push_back(3);
        asym.k2.push_back(0);
        asym.k12.push_back(0);
        asym.k21.push_back(0);
    }
    auto obs = flip_obstruction(asym);
    if (!obs.obstructed || !obs.r_at_tau1.disjoint_from(obs.r_at_tau2)) {
        ok = false;
        detail = "asymmetric instance not obstructed";
    }

    // symmetric instances: never obstructed
    std::mt19937 rng2(4242);
    for (int t = 0; t < 10 && ok; ++t) {
        HPParams sym;
        sym.dim = 2;
        std::size_t L = len(rng2);
        for (std::size_t i = 0; i < L; ++i) {
            std::uint64_t n = nd(rng2), k = kd(rng2), kc = kd(rng2);
            sym.n1.push_back(n);
            sym.n2.push_back(n);
            sym.k1.push_back(k);
            sym.k2.push_back(k);
            sym.k12.push_back(kc);
            sym.k21.push_back(kc);
        }
        if (flip_obstruction(sym).obstructed) {
            ok = false;
            detail = "symmetric instance reported obstructed";
        }
    }
    report(5, "HP pipeline agrees with the generic 2-vertex pipeline; flip verdicts", ok,
           detail);
}

// --- criterion 6: seed separation ----------------------------------------

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    auto a = generate_uhf_system(testutil::square_seed(), {2, 4, 8}, {1, 1, 1});
    auto b = generate_uhf_system(testutil::wedge_seed(), {2, 4, 8}, {1, 1, 1});
    auto rep = compare_invariants(a, b);
    bool ok = rep.distinguished && rep.verdict == "invariants distinguished at truncation";
    std::string detail = ok ? "" : "not distinguished";
    if (ok) {
        if (!rep.dirac_a || rep.dirac_a->size() != 1 || !rep.dirac_b ||
            rep.dirac_b->size() != 2) {
            ok = false;
            detail = "Dirac value sets have unexpected shapes";
        } else if ((*rep.dirac_b)[1] != 2 * (*rep.dirac_b)[0] ||
                   (*rep.dirac_a)[0] != (*rep.dirac_b)[1]) {
            ok = false;
            detail = "Dirac value sets not in the exact {x} vs {x/2, x} ratio";
        } else if (!rep.rc_upper_equal || rep.rc_brackets_disjoint) {
            ok = false;
            detail = "rc brackets not equal";
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 1.0) {
        ok = false;
        detail = "runtime >= 1 s";
    }
    report(6, "seed separation [0,1]^2 vs [0,1] wedge [0,1]^2: distinguished, equal rc", ok,
           detail);
}

// --- criterion 7: witness soundness ---------------------------------------

void criterion7() {
    bool ok = true;
    std::string detail;
    std::mt19937 rng(55667788);
    std::uniform_int_distribution<int> bump_num(0, 30);
    int runs = 0;
    while (runs < 1000 && ok) {
        VilladsenSystem sys = testutil::random_system(rng, 3, 5);
        std::size_t last = sys.num_stages();
        StageAffine r_last = r0_stage(sys, last);
        for (int rep = 0; rep < 20 && runs < 1000; ++rep, ++runs) {
            StageAffine h{last, {}};
            for (const auto& v : r_last.values)
                h.values.push_back(v + Rational(bump_num(rng), 60));
            if (check_gap_function(sys, h).classification ==
                GapClassification::CertifiedNotGap) {
                ok = false;
                detail = "certified-not-gap for h >= r_last";
            }
        }
    }

    // h == 0 passes on a deep, rapidly growing, strictly-positive-r system
    if (ok) {
        auto sys = testutil::make_uhf({4, 16, 64, 256, 1024, 4096}, {1, 1, 1, 1, 1, 1});
        StageAffine zero{4, {Rational(0)}};
        WitnessReport rep = build_witness(sys, zero);
        if (rep.verdict != WitnessVerdict::Pass || !rep.all_checks_hold()) {
            ok = false;
            detail = "h == 0 witness did not pass or re-validate";
        }
    }
    report(7, "witness soundness: 1000 h >= r_last never certified; h == 0 passes", ok,
           detail);
}

// --- criterion 8: intertwining --------------------------------------------

void criterion8() {
    bool ok = true;
    std::string detail;
    std::mt19937 rng(99001122);
    std::uniform_int_distribution<int> md(1, 300), ud(1, 4), dims(1, 3);
    for (int t = 0; t < 200 && ok; ++t) {
        IntertwineInstance inst;
        std::size_t rows = dims(rng), cols = dims(rng);
        inst.m = IntMatrix(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) inst.m(i, j) = md(rng);
        for (std::size_t i = 0; i < rows; ++i) inst.u_src.push_back(BigInt(ud(rng)));
        for (std::size_t j = 0; j < cols; ++j) inst.u_tgt_bound.push_back(BigInt(1) << 18);
        inst.delta_prime = Rational(1, 3 + (t % 6));
        auto result = find_projection_multiplicities(inst);
        if (std::holds_alternative<Infeasible>(result)) continue;
        const IntMatrix& d = std::get<IntMatrix>(result);
        for (std::size_t i = 0; i < rows && ok; ++i)
            for (std::size_t j = 0; j < cols && ok; ++j) {
                Rational lo = (Rational(1) - 2 * inst.delta_prime) * Rational(inst.m(i, j));
                Rational hi = (Rational(1) - inst.delta_prime) * Rational(inst.m(i, j));
                if (!(Rational(d(i, j)) > lo && Rational(d(i, j)) < hi)) {
                    ok = false;
                    detail = "interval constraint violated by output";
                }
            }
        for (std::size_t j = 0; j < cols && ok; ++j) {
            BigInt col = 0;
            for (std::size_t i = 0; i < rows; ++i) col += inst.u_src[i] * d(i, j);
            if (col >= inst.u_tgt_bound[j]) {
                ok = false;
                detail = "column-sum constraint violated by output";
            }
        }
    }
    if (ok) {
        IntertwineInstance small;
        small.m = IntMatrix(1, 1);
        small.m(0, 0) = 3;
        small.u_src = {BigInt(1)};
        small.u_tgt_bound = {BigInt(1000)};
        small.delta_prime = Rational(1, 10);
        auto result = find_projection_multiplicities(small);
        if (!std::holds_alternative<Infeasible>(result) ||
            std::get<Infeasible>(result).violated_constraint.find("empty interval") ==
                std::string::npos) {
            ok = false;
            detail = "m = 3 infeasibility not reported with the empty interval named";
        }
    }
    report(8, "intertwining outputs satisfy both inequality families; m=3 infeasible", ok,
           detail);
}

// --- criterion 9: CLI determinism ------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion9(const fs::path& src, const std::string& cli) {
    if (cli.empty()) {
        report(9, "CLI determinism (skipped: no CLI path given)", false, "missing argv[2]");
        return;
    }
    const fs::path samples = src / "samples";
    std::vector<std::string> runs = {
        "validate " + (samples / "square_2_4_8.json").string(),
        "ratios " + (samples / "square_2_4_8.json").string(),
        "ratios " + (samples / "two_vertex.json").string(),
        "ratios " + (samples / "uhf_square.json").string(),
        "rc " + (samples / "two_vertex.json").string() + " --projection 2:1,2",
        "hp " + (samples / "hp_symmetric.json").string(),
        "hp " + (samples / "hp_asymmetric.json").string(),
        "uhf --seed " + (samples / "seed_square.json").string() + " --n 2,4,8 --k 1,1,1",
        "uhf --seed " + (samples / "seed_wedge.json").string() + " --n 2,4,8 --k 1,1,1",
        "witness " + (samples / "uhf_square.json").string() + " --h 2:1/4",
        "intertwine " + (samples / "intertwine_feasible.json").string(),
        "intertwine " + (samples / "intertwine_infeasible.json").string(),
        "compare --a " + (samples / "uhf_square.json").string() + " --b " +
            (samples / "uhf_wedge.json").string(),
    };
    bool ok = true;
    std::string detail;
    fs::path tmp = fs::temp_directory_path() / "villab_det";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    int idx = 0;
    for (const auto& args : runs) {
        fs::path o1 = tmp / ("r" + std::to_string(idx) + "a");
        fs::path o2 = tmp / ("r" + std::to_string(idx) + "b");
        std::string c1 = cli + " " + args + " > " + o1.string() + " 2>/dev/null";
        std::string c2 = cli + " " + args + " > " + o2.string() + " 2>/dev/null";
        int s1 = std::system(c1.c_str());
        int s2 = std::system(c2.c_str());
        if (s1 != s2 || slurp(o1) != slurp(o2)) {
            ok = false;
            detail = "run not byte-identical: " + args;
            break;
        }
        ++idx;
    }
    report(9, "CLI byte-identical across two invocations on the sample corpus", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    fs::path src = argc > 1 ? fs::path(argv[1]) : fs::current_path();
    std::string cli = argc > 2 ? argv[2] : "";

    auto corpus = corpus50();
    criterion1(corpus);
    criterion2(corpus);
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9(src, cli);

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
