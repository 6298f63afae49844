// villab: invariants of AF- and UHF-Villadsen inductive systems.
//
// Subcommands: validate, ratios, rc, hp, uhf, witness, intertwine, compare.
// All computation is exact; the --digits option affects rendering only.
// Exit codes: 0 ok, 1 parse error, 2 validation error, 3 infeasible or
// indeterminate, 4 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <villab/compare.hpp>
#include <villab/core_model.hpp>
#include <villab/hp_family.hpp>
#include <villab/intertwining.hpp>
#include <villab/ratios.hpp>
#include <villab/trace_geometry.hpp>
#include <villab/uhf_locdim.hpp>
#include <villab/witnesses.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace villab;

namespace {

constexpr int kExitOk = 0, kExitParse = 1, kExitValidation = 2, kExitIndeterminate = 3,
              kExitInternal = 4;

unsigned g_digits = 12;
std::string g_outdir;

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("bad rational: '" + s + "'");
    }
}

json rational_json(const Rational& q) {
    return json{{"exact", to_string(q)}, {"decimal", to_decimal(q, g_digits)}};
}

json bracket_json(const Bracket& b) {
    return json{{"lower", rational_json(b.lower)}, {"upper", rational_json(b.upper)}};
}

json vector_json(const RationalVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

void emit(const std::string& name, const std::string& content) {
    if (g_outdir.empty()) {
        std::cout << content;
        return;
    }
    std::filesystem::create_directories(g_outdir);
    std::ofstream out(std::filesystem::path(g_outdir) / name, std::ios::binary);
    out << content;
}

VilladsenSystem load_truncated(const std::string& path, std::size_t max_stage) {
    VilladsenSystem sys = load_system(path);
    if (max_stage >= 2 && max_stage < sys.num_stages()) {
        sys.levels.resize(max_stage - 1);
        sys.validate();
    }
    return sys;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(std::stoull(tok));
    return out;
}

StageAffine parse_stage_affine(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("expected <stage>:<v1,v2,...>");
    StageAffine h;
    h.stage = std::stoull(s.substr(0, colon));
    std::stringstream ss(s.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) h.values.push_back(parse_rational(tok));
    return h;
}

json diagnostics_json(const RapidGrowthReport& rep) {
    json j;
    j["verdict"] = to_string(rep.verdict);
    j["tolerance"] = rational_json(rep.tolerance);
    j["delta_min"] = rational_json(rep.delta_min);
    j["last_stage_quantity"] = rational_json(rep.last_stage_quantity);
    j["positivity_risk"] = rep.positivity_risk;
    j["pairs"] = json::array();
    for (const auto& p : rep.pairs)
        j["pairs"].push_back({{"stage", p.stage},
                              {"pushforward_gap_sup", rational_json(p.pushforward_gap_sup)},
                              {"cauchy_over_u", rational_json(p.cauchy_over_u)},
                              {"cauchy_over_u_tilde", rational_json(p.cauchy_over_u_tilde)}});
    return j;
}

json witness_json(const WitnessReport& rep) {
    json j;
    j["stage_n"] = rep.stage_n;
    j["stage_k"] = rep.stage_k;
    j["witness_vertex"] = rep.witness_vertex + 1;
    j["delta"] = rational_json(rep.delta);
    j["eps"] = rational_json(rep.eps);
    j["m_bound"] = rational_json(rep.m_bound);
    j["small_gap_vertices"] = json::array();
    for (auto v : rep.small_gap_vertices) j["small_gap_vertices"].push_back(v + 1);
    j["d"] = json::array();
    for (const auto& d : rep.d) j["d"].push_back(d.str());
    j["q_trace"] = {{"lower", rational_json(rep.q_trace_lower)},
                    {"upper", rational_json(rep.q_trace_upper)}};
    j["chern_degree"] = rep.chern_degree.str();
    j["trivial_rank_bound"] = rep.trivial_rank_bound.str();
    j["trivial_trace_bound"] = rational_json(rep.trivial_trace_bound);
    j["checks"] = json::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"name", c.name},
                               {"lhs", to_string(c.lhs)},
                               {"rhs", to_string(c.rhs)},
                               {"relation", c.strict ? "<" : "<="},
                               {"holds", c.holds()}});
    j["verdict"] = rep.verdict == WitnessVerdict::Pass          ? "pass"
                   : rep.verdict == WitnessVerdict::Fail        ? "fail"
                                                                : "deepen-the-diagram";
    j["detail"] = rep.detail;
    return j;
}

int run_validate(const std::string& input, std::size_t max_stage) {
    VilladsenSystem sys = load_truncated(input, max_stage);
    emit("validate.txt", "ok: " + std::to_string(sys.num_stages()) + " stages, " +
                             std::to_string(sys.vertex_count(sys.num_stages())) +
                             " vertices at the last stage\n");
    return kExitOk;
}

int run_ratios(const std::string& input, std::size_t max_stage, const std::string& tol) {
    VilladsenSystem sys = load_truncated(input, max_stage);
    std::ostringstream csv;
    csv << "stage,vertex,u,u_tilde,r_exact,r_decimal\n";
    for (std::size_t n = 1; n <= sys.num_stages(); ++n) {
        IntVector u = compute_u(sys, n), ut = compute_u_tilde(sys, n);
        StageAffine r = r0_stage(sys, n);
        for (std::size_t j = 0; j < u.size(); ++j)
            csv << n << "," << j + 1 << "," << u[j].str() << "," << ut[j].str() << ","
                << to_string(r.values[j]) << "," << to_decimal(r.values[j], g_digits) << "\n";
    }
    emit("ratios.csv", csv.str());
    if (sys.num_stages() >= 2) {
        auto rep = rapid_growth_report(sys, parse_rational(tol));
        emit("diagnostics.json", diagnostics_json(rep).dump(2) + "\n");
    }
    return kExitOk;
}

int run_rc(const std::string& input, std::size_t max_stage, const std::string& proj,
           std::size_t at) {
    VilladsenSystem sys = load_truncated(input, max_stage);
    auto colon = proj.find(':');
    if (colon == std::string::npos) throw ParseError("--projection expects <stage>:<r1,r2,...>");
    CornerProjection p;
    p.stage = std::stoull(proj.substr(0, colon));
    for (auto v : parse_uint_list(proj.substr(colon + 1))) p.ranks.push_back(BigInt(v));
    if (at == 0) at = sys.num_stages();
    auto rc = rc_corner(sys, p, at);
    json j;
    j["rc_upper"] = rational_json(rc.rc_upper);
    j["rc_lower"] = rational_json(rc.rc_lower);
    j["argmax_vertex"] = rc.argmax_vertex + 1;
    j["trace_vector"] = vector_json(rc.trace_vector);
    emit("rc.json", j.dump(2) + "\n");
    return kExitOk;
}

HPParams load_hp_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    HPParams p;
    try {
        p.dim = j.at("dim").get<std::uint64_t>();
        p.n1 = j.at("n1").get<std::vector<std::uint64_t>>();
        p.n2 = j.at("n2").get<std::vector<std::uint64_t>>();
        p.k1 = j.at("k1").get<std::vector<std::uint64_t>>();
        p.k2 = j.at("k2").get<std::vector<std::uint64_t>>();
        p.k12 = j.at("k12").get<std::vector<std::uint64_t>>();
        p.k21 = j.at("k21").get<std::vector<std::uint64_t>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad hp params: ") + e.what());
    }
    p.validate();
    return p;
}

int run_hp(const std::string& input) {
    HPParams p = load_hp_params(input);
    VilladsenSystem sys = p.to_system();
    RationalVector c = compression_coefficients(p);
    auto coords = extreme_coordinates(p);
    std::ostringstream csv;
    csv << "level,c,gap,u1,u2,u_tilde1,u_tilde2,r1,r2\n";
    for (std::size_t i = 0; i < p.num_levels(); ++i) {
        IntVector u = compute_u(sys, i + 2), ut = compute_u_tilde(sys, i + 2);
        StageAffine r = r0_stage(sys, i + 2);
        csv << i + 1 << "," << to_string(c[i]) << "," << to_string(coords.gaps[i]) << ","
            << u[0].str() << "," << u[1].str() << "," << ut[0].str() << "," << ut[1].str()
            << "," << to_string(r.values[0]) << "," << to_string(r.values[1]) << "\n";
    }
    emit("hp.csv", csv.str());
    FlipReport flip = flip_obstruction(p);
    json j;
    j["flip"] = {{"verdict", flip.verdict},
                 {"r_at_tau1", bracket_json(flip.r_at_tau1)},
                 {"r_at_tau2", bracket_json(flip.r_at_tau2)}};
    j["extreme_gap_full_product"] = rational_json(coords.full_product);
    emit("hp.json", j.dump(2) + "\n");
    return kExitOk;
}

SeedSpace load_seed(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (j.contains("seed")) j = j["seed"];
    SeedSpace seed;
    try {
        seed.dim = j.at("dim").get<std::uint64_t>();
        for (const auto& st : j.at("strata"))
            seed.strata.push_back(
                {st.at("label").get<std::string>(), st.at("locdim").get<std::uint64_t>()});
        seed.k_contractible = j.value("k_contractible", false);
        seed.solid = j.value("solid", false);
        seed.connected = j.value("connected", false);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad seed file: ") + e.what());
    }
    seed.validate();
    return seed;
}

int run_uhf(const std::string& seed_path, const std::string& n_str, const std::string& k_str,
            const std::string& tail_str) {
    SeedSpace seed = load_seed(seed_path);
    auto n = parse_uint_list(n_str), k = parse_uint_list(k_str);
    TailDescriptor tail = tail_str == "truncate"
                              ? TailDescriptor::truncate()
                              : TailDescriptor::certified(parse_rational(tail_str));

    std::ostringstream csv;
    csv << "stage,stratum,r_s_exact,r_s_decimal\n";
    for (std::size_t s = 1; s <= n.size() + 1; ++s) {
        BigInt power = 1;
        for (std::size_t m = 0; m + 1 < s; ++m) power *= n[m];
        for (std::size_t t = 0; t < seed.strata.size(); ++t) {
            // Pure profile: all factors in one stratum.
            StratumProfile prof{std::vector<std::uint64_t>(seed.strata.size(), 0)};
            prof.counts[t] = power.convert_to<std::uint64_t>();
            Rational r = r_s_on_stratum(n, k, s, seed, prof);
            csv << s << "," << seed.strata[t].label << "," << to_string(r) << ","
                << to_decimal(r, g_digits) << "\n";
        }
    }
    emit("uhf.csv", csv.str());

    json j;
    j["dirac"] = json::array();
    for (const auto& st : seed.strata) {
        DiracValue v = r_infty_dirac(n, k, st.locdim, tail);
        j["dirac"].push_back({{"stratum", st.label},
                              {"locdim", st.locdim},
                              {"bracket", bracket_json(v.bracket)},
                              {"tail_unknown", v.tail_unknown}});
    }
    if (n.size() >= 2)
        j["tail_bound_1_to_last"] =
            rational_json(tail_bound(n, k, seed.dim, 1, n.size() + 1));
    DiracValue unit = r_infty_dirac(n, k, seed.dim, tail);
    j["rc_unit_bracket"] = bracket_json(unit.bracket);
    emit("uhf.json", j.dump(2) + "\n");
    return kExitOk;
}

int run_witness(const std::string& input, std::size_t max_stage, const std::string& h_str,
                const std::string& eps_str) {
    VilladsenSystem sys = load_truncated(input, max_stage);
    StageAffine h = parse_stage_affine(h_str);
    Rational eps = eps_str.empty() ? Rational(0) : parse_rational(eps_str);
    WitnessReport rep = build_witness(sys, h, eps);
    emit("witness.json", witness_json(rep).dump(2) + "\n");
    return rep.verdict == WitnessVerdict::Pass ? kExitOk : kExitIndeterminate;
}

int run_intertwine(const std::string& input) {
    std::ifstream in(input);
    if (!in) throw ParseError("cannot open file: " + input);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    IntertwineInstance inst;
    try {
        const auto& mj = j.at("m");
        inst.m = IntMatrix(mj.size(), mj[0].size());
        for (std::size_t i = 0; i < mj.size(); ++i)
            for (std::size_t c = 0; c < mj[i].size(); ++c)
                inst.m(i, c) = BigInt(mj[i][c].get<std::int64_t>());
        for (const auto& v : j.at("u_src")) inst.u_src.push_back(BigInt(v.get<std::int64_t>()));
        for (const auto& v : j.at("u_tgt_bound"))
            inst.u_tgt_bound.push_back(BigInt(v.get<std::int64_t>()));
        inst.delta_prime = parse_rational(j.at("delta_prime").get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad intertwine instance: ") + e.what());
    }
    auto result = find_projection_multiplicities(inst);
    json out;
    if (std::holds_alternative<Infeasible>(result)) {
        out["feasible"] = false;
        out["violated_constraint"] = std::get<Infeasible>(result).violated_constraint;
        emit("intertwine.json", out.dump(2) + "\n");
        return kExitIndeterminate;
    }
    const IntMatrix& d = std::get<IntMatrix>(result);
    out["feasible"] = true;
    out["delta"] = json::array();
    for (std::size_t i = 0; i < d.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < d.cols(); ++c) row.push_back(d(i, c).str());
        out["delta"].push_back(row);
    }
    emit("intertwine.json", out.dump(2) + "\n");
    return kExitOk;
}

int run_compare(const std::string& a_path, const std::string& b_path, std::size_t max_stage) {
    VilladsenSystem a = load_truncated(a_path, max_stage);
    VilladsenSystem b = load_truncated(b_path, max_stage);
    CompareReport rep = compare_invariants(a, b);
    json j;
    j["verdict"] = rep.verdict;
    j["r_last_sets"] = {{"a", vector_json(rep.r_last_a)},
                        {"b", vector_json(rep.r_last_b)},
                        {"equal", rep.r_sets_equal}};
    j["rc_unit_brackets"] = {{"a", bracket_json(rep.rc_unit_a)},
                             {"b", bracket_json(rep.rc_unit_b)},
                             {"disjoint", rep.rc_brackets_disjoint},
                             {"upper_equal", rep.rc_upper_equal}};
    if (rep.dirac_a)
        j["dirac_sets"] = {{"a", vector_json(*rep.dirac_a)},
                           {"b", vector_json(*rep.dirac_b)},
                           {"equal", rep.dirac_sets_equal}};
    emit("compare.json", j.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"villab: Cuntz-semigroup-derived invariants of Villadsen-type inductive systems"};
    app.require_subcommand(1);
    app.add_option("--digits", g_digits, "decimal digits for display rendering");
    app.add_option("--out", g_outdir, "output directory (default: stdout)");
    if (const char* env = std::getenv("VILLAB_OUT_DIR"); env && *env) g_outdir = env;

    std::string input, proj, h_str, eps_str, a_path, b_path, seed_path, n_str, k_str;
    std::string tail_str = "truncate", tol = "1/1000";
    std::size_t max_stage = 0, at = 0;

    auto* validate = app.add_subcommand("validate", "load and validate a system file");
    validate->add_option("input", input)->required();
    validate->add_option("--max-stage", max_stage);

    auto* ratios = app.add_subcommand("ratios", "u, u~, r per stage plus growth diagnostics");
    ratios->add_option("input", input)->required();
    ratios->add_option("--max-stage", max_stage);
    ratios->add_option("--tolerance", tol, "rapid-growth verdict tolerance (rational)");

    auto* rc = app.add_subcommand("rc", "corner radius of comparison");
    rc->add_option("input", input)->required();
    rc->add_option("--projection", proj, "<stage>:<rank1,rank2,...>")->required();
    rc->add_option("--at", at, "evaluation stage (default: last)");
    rc->add_option("--max-stage", max_stage);

    auto* hp = app.add_subcommand("hp", "two-vertex Hirshberg-Phillips family");
    hp->add_option("input", input, "HP params JSON")->required();

    auto* uhf = app.add_subcommand("uhf", "UHF-type system over a stratified seed");
    uhf->add_option("--seed", seed_path)->required();
    uhf->add_option("--n", n_str, "comma-separated n sequence")->required();
    uhf->add_option("--k", k_str, "comma-separated k sequence")->required();
    uhf->add_option("--tail", tail_str, "'truncate' or a certified tail lower bound p/q");

    auto* witness = app.add_subcommand("witness", "non-comparison witness arithmetic");
    witness->set_help_flag("--help", "print help");  // frees -h/--h for the function option
    witness->add_option("input", input)->required();
    witness->add_option("--h", h_str, "<stage>:<v1,v2,...> (rationals)")->required();
    witness->add_option("--eps", eps_str);
    witness->add_option("--max-stage", max_stage);

    auto* intertwine = app.add_subcommand("intertwine", "projection multiplicity feasibility");
    intertwine->add_option("input", input, "instance JSON")->required();

    auto* compare = app.add_subcommand("compare", "compare invariants of two systems");
    compare->add_option("--a", a_path)->required();
    compare->add_option("--b", b_path)->required();
    compare->add_option("--max-stage", max_stage);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return run_validate(input, max_stage);
        if (*ratios) return run_ratios(input, max_stage, tol);
        if (*rc) return run_rc(input, max_stage, proj, at);
        if (*hp) return run_hp(input);
        if (*uhf) return run_uhf(seed_path, n_str, k_str, tail_str);
        if (*witness) return run_witness(input, max_stage, h_str, eps_str);
        if (*intertwine) return run_intertwine(input);
        if (*compare) return run_compare(a_path, b_path, max_stage);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
