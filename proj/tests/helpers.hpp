#pragma once

// Shared fixtures for the test suites: canonical seeds, UHF builders, and a
// randomized-system generator used by the property tests.

#include <villab/core_model.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace testutil {

inline villab::SeedSpace square_seed() {
    villab::SeedSpace s;
    s.dim = 2;
    s.strata = {{"square", 2}};
    s.k_contractible = s.solid = s.connected = true;
    return s;
}

inline villab::SeedSpace wedge_seed() {
    villab::SeedSpace s;
    s.dim = 2;
    s.strata = {{"arc", 1}, {"square", 2}};
    s.k_contractible = s.connected = true;
    s.solid = false;
    return s;
}

inline villab::VilladsenSystem make_uhf(const std::vector<std::uint64_t>& n,
                                        const std::vector<std::uint64_t>& k,
                                        std::uint64_t dim = 2) {
    villab::SeedSpace seed = square_seed();
    seed.dim = dim;
    seed.strata = {{"top", dim}};
    return villab::generate_uhf_system(seed, n, k);
}

/// Random valid system: widths <= max_width, <= max_levels levels, entries
/// <= max_entry.  Every column of M gets a positive entry so u stays
/// positive and r stays strictly positive.
inline villab::VilladsenSystem random_system(std::mt19937& rng, std::size_t max_width = 4,
                                             std::size_t max_levels = 6, int max_entry = 9) {
    using namespace villab;
    std::uniform_int_distribution<std::size_t> widths(1, max_width);
    std::uniform_int_distribution<std::size_t> depth(2, max_levels);
    std::uniform_int_distribution<int> entry(0, max_entry);
    std::uniform_int_distribution<int> pos_entry(1, max_entry);
    std::uniform_int_distribution<int> u1_entry(1, 3);

    VilladsenSystem sys;
    sys.seed = square_seed();
    std::size_t w = widths(rng);
    for (std::size_t i = 0; i < w; ++i) sys.u1.push_back(BigInt(u1_entry(rng)));
    std::size_t levels = depth(rng);
    for (std::size_t n = 0; n < levels; ++n) {
        std::size_t w_next = widths(rng);
        LevelData lv{IntMatrix(w, w_next), IntMatrix(w, w_next)};
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < w_next; ++j) {
                lv.M(i, j) = entry(rng);
                lv.E(i, j) = entry(rng);
            }
        for (std::size_t j = 0; j < w_next; ++j) {
            std::uniform_int_distribution<std::size_t> pick(0, w - 1);
            lv.M(pick(rng), j) = pos_entry(rng);
        }
        sys.levels.push_back(lv);
        w = w_next;
    }
    sys.validate();
    return sys;
}

}  // namespace testutil
