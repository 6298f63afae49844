#include <villab/core_model.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace villab {

using nlohmann::json;

void SeedSpace::validate() const {
    if (strata.empty()) throw ValidationError("seed: strata must be nonempty");
    bool dim_attained = false;
    for (std::size_t s = 0; s < strata.size(); ++s) {
        if (strata[s].locdim > dim)
            throw ValidationError("seed: stratum " + std::to_string(s) + " ('" +
                                  strata[s].label + "') has locdim " +
                                  std::to_string(strata[s].locdim) + " > dim " +
                                  std::to_string(dim));
        if (strata[s].locdim == dim) dim_attained = true;
    }
    if (!dim_attained)
        throw ValidationError("seed: no stratum attains locdim == dim");
}

void SeedSpace::require_positive_dim() const {
    if (dim == 0)
        throw ValidationError("seed: operation requires 0 < dim(X) < ∞, got dim == 0");
}

std::size_t VilladsenSystem::vertex_count(std::size_t stage) const {
    if (stage < 1 || stage > num_stages())
        throw ValidationError("stage " + std::to_string(stage) + " out of range [1, " +
                              std::to_string(num_stages()) + "]");
    if (stage == 1) return u1.size();
    return levels[stage - 2].s_next();
}

void VilladsenSystem::validate() const {
    seed.validate();
    if (u1.empty()) throw ValidationError("u1 must be nonempty");
    for (std::size_t i = 0; i < u1.size(); ++i)
        if (u1[i] <= 0)
            throw ValidationError("u1[" + std::to_string(i) + "] must be positive");

    std::size_t s_cur = u1.size();
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const LevelData& lv = levels[n];
        const std::string where = "level " + std::to_string(n + 1);
        if (lv.M.rows() != lv.E.rows() || lv.M.cols() != lv.E.cols())
            throw ValidationError(where + ": M and E shapes disagree");
        if (lv.M.rows() == 0 || lv.M.cols() == 0)
            throw ValidationError(where + ": empty matrix");
        if (lv.M.rows() != s_cur)
            throw ValidationError(where + ": expected " + std::to_string(s_cur) +
                                  " rows, got " + std::to_string(lv.M.rows()));
        if (!lv.M.all_nonnegative() || !lv.E.all_nonnegative())
            throw ValidationError(where + ": negative multiplicity");
        // Unitality into each target summand: some mass must arrive.
        for (std::size_t j = 0; j < lv.M.cols(); ++j) {
            BigInt col = 0;
            for (std::size_t i = 0; i < lv.M.rows(); ++i) col += lv.M(i, j) + lv.E(i, j);
            if (col == 0)
                throw ValidationError(where + ": column " + std::to_string(j + 1) +
                                      " of M+E is all zero (connecting map not unital)");
        }
        s_cur = lv.M.cols();
    }
}

namespace {

BigInt parse_bigint(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw ParseError(where + ": expected integer");
}

IntMatrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": expected nonempty matrix");
    std::size_t rows = j.size();
    std::size_t cols = 0;
    IntMatrix m;
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array()) throw ParseError(where + ": row " + std::to_string(i + 1) + " not an array");
        if (i == 0) {
            cols = row.size();
            m = IntMatrix(rows, cols);
        } else if (row.size() != cols) {
            throw ParseError(where + ": ragged rows");
        }
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = parse_bigint(row[k], where);
    }
    return m;
}

SeedSpace parse_seed(const json& j) {
    SeedSpace seed;
    seed.dim = j.at("dim").get<std::uint64_t>();
    for (const auto& st : j.at("strata"))
        seed.strata.push_back({st.at("label").get<std::string>(), st.at("locdim").get<std::uint64_t>()});
    seed.k_contractible = j.value("k_contractible", false);
    seed.solid = j.value("solid", false);
    seed.connected = j.value("connected", false);
    return seed;
}

std::vector<std::uint64_t> parse_uints(const json& j, const std::string& where) {
    std::vector<std::uint64_t> out;
    if (!j.is_array()) throw ParseError(where + ": expected array");
    for (const auto& v : j) out.push_back(v.get<std::uint64_t>());
    return out;
}

}  // namespace

VilladsenSystem parse_system(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }

    try {
        if (j.contains("uhf")) {
            const json& u = j["uhf"];
            SeedSpace seed = parse_seed(u);
            auto sys = generate_uhf_system(seed, parse_uints(u.at("n"), "uhf.n"),
                                           parse_uints(u.at("k"), "uhf.k"));
            sys.validate();
            return sys;
        }

        VilladsenSystem sys;
        sys.seed = parse_seed(j.at("seed"));
        for (const auto& v : j.at("u1")) sys.u1.push_back(parse_bigint(v, "u1"));
        for (std::size_t n = 0; n < j.at("levels").size(); ++n) {
            const json& lv = j["levels"][n];
            const std::string where = "level " + std::to_string(n + 1);
            sys.levels.push_back({parse_matrix(lv.at("M"), where + ".M"),
                                  parse_matrix(lv.at("E"), where + ".E")});
        }
        sys.validate();
        return sys;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad system file: ") + e.what());
    }
}

VilladsenSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

std::string serialize(const VilladsenSystem& system) {
    json j;
    j["seed"]["dim"] = system.seed.dim;
    j["seed"]["strata"] = json::array();
    for (const auto& st : system.seed.strata)
        j["seed"]["strata"].push_back({{"label", st.label}, {"locdim", st.locdim}});
    j["seed"]["k_contractible"] = system.seed.k_contractible;
    j["seed"]["solid"] = system.seed.solid;
    j["seed"]["connected"] = system.seed.connected;
    j["u1"] = json::array();
    for (const auto& v : system.u1) j["u1"].push_back(v.str());
    j["levels"] = json::array();
    for (const auto& lv : system.levels) {
        json m = json::array(), e = json::array();
        for (std::size_t i = 0; i < lv.M.rows(); ++i) {
            json mr = json::array(), er = json::array();
            for (std::size_t k = 0; k < lv.M.cols(); ++k) {
                mr.push_back(lv.M(i, k).str());
                er.push_back(lv.E(i, k).str());
            }
            m.push_back(mr);
            e.push_back(er);
        }
        j["levels"].push_back({{"M", m}, {"E", e}});
    }
    return j.dump(2) + "\n";
}

VilladsenSystem generate_uhf_system(const SeedSpace& seed,
                                    const std::vector<std::uint64_t>& n_seq,
                                    const std::vector<std::uint64_t>& k_seq) {
    if (n_seq.size() != k_seq.size())
        throw ValidationError("uhf: n and k sequences have different lengths (" +
                              std::to_string(n_seq.size()) + " vs " +
                              std::to_string(k_seq.size()) + ")");
    VilladsenSystem sys;
    sys.seed = seed;
    sys.u1 = {BigInt(1)};
    for (std::size_t s = 0; s < n_seq.size(); ++s) {
        if (n_seq[s] < 1)
            throw ValidationError("uhf: n[" + std::to_string(s) + "] must be >= 1");
        LevelData lv{IntMatrix(1, 1), IntMatrix(1, 1)};
        lv.M(0, 0) = n_seq[s];
        lv.E(0, 0) = k_seq[s];
        sys.levels.push_back(lv);
    }
    sys.validate();
    return sys;
}

}  // namespace villab
