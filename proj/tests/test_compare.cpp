#include <doctest.h>

#include <villab/compare.hpp>
#include <villab/core_model.hpp>

#include "helpers.hpp"

using namespace villab;

TEST_CASE("identical systems are not distinguished") {
    auto sys = testutil::make_uhf({2, 4, 8}, {1, 1, 1});
    auto rep = compare_invariants(sys, sys);
    CHECK_FALSE(rep.distinguished);
    CHECK(rep.verdict == "not distinguished at truncation");
    CHECK(rep.r_sets_equal);
    CHECK(rep.rc_upper_equal);
    CHECK(rep.dirac_sets_equal);
}

TEST_CASE("square vs wedge seeds, same (n, k): distinguished, equal rc") {
    auto a = generate_uhf_system(testutil::square_seed(), {2, 4, 8}, {1, 1, 1});
    auto b = generate_uhf_system(testutil::wedge_seed(), {2, 4, 8}, {1, 1, 1});
    auto rep = compare_invariants(a, b);
    CHECK(rep.distinguished);
    CHECK(rep.verdict == "invariants distinguished at truncation");
    CHECK(rep.rc_upper_equal);
    CHECK_FALSE(rep.rc_brackets_disjoint);
    REQUIRE(rep.dirac_a.has_value());
    REQUIRE(rep.dirac_b.has_value());
    CHECK(rep.dirac_a->size() == 1);
    CHECK(rep.dirac_b->size() == 2);
    CHECK((*rep.dirac_b)[1] == 2 * (*rep.dirac_b)[0]);
    CHECK_FALSE(rep.dirac_sets_equal);
}

TEST_CASE("same seed, different evaluation counts: distinguished by r") {
    auto a = testutil::make_uhf({2, 4, 8}, {0, 0, 0});
    auto b = testutil::make_uhf({2, 4, 8}, {2, 3, 4});
    auto rep = compare_invariants(a, b);
    CHECK(rep.distinguished);
    CHECK_FALSE(rep.r_sets_equal);
}

TEST_CASE("r value sets are compared up to vertex permutation") {
    // two 2-vertex systems whose towers are swapped
    VilladsenSystem a, b;
    a.seed = b.seed = testutil::square_seed();
    a.u1 = b.u1 = {BigInt(1), BigInt(1)};
    LevelData la{IntMatrix(2, 2), IntMatrix(2, 2)}, lb{IntMatrix(2, 2), IntMatrix(2, 2)};
    la.M(0, 0) = 2;
    la.M(1, 1) = 3;
    la.E(0, 0) = 1;
    la.E(1, 1) = 2;
    lb.M(0, 0) = 3;
    lb.M(1, 1) = 2;
    lb.E(0, 0) = 2;
    lb.E(1, 1) = 1;
    a.levels.push_back(la);
    b.levels.push_back(lb);
    auto rep = compare_invariants(a, b);
    CHECK(rep.r_sets_equal);
    CHECK_FALSE(rep.distinguished);
}
