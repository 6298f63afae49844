#include <villab/compare.hpp>

#include <villab/ratios.hpp>
#include <villab/trace_geometry.hpp>
#include <villab/uhf_locdim.hpp>

#include <algorithm>
#include <set>

namespace villab {

namespace {

RationalVector sorted_r_last(const VilladsenSystem& sys) {
    RationalVector v = r0_stage(sys, sys.num_stages()).values;
    std::sort(v.begin(), v.end());
    return v;
}

Bracket rc_unit(const VilladsenSystem& sys) {
    const std::size_t last = sys.num_stages();
    CornerProjection unit{last, compute_u_tilde(sys, last)};
    auto rc = rc_corner(sys, unit, last);
    return {rc.rc_lower, rc.rc_upper};
}

bool is_uhf(const VilladsenSystem& sys) {
    if (sys.u1.size() != 1) return false;
    for (const auto& lv : sys.levels)
        if (lv.M.rows() != 1 || lv.M.cols() != 1) return false;
    return true;
}

RationalVector dirac_set(const VilladsenSystem& sys) {
    std::vector<std::uint64_t> n, k;
    for (const auto& lv : sys.levels) {
        n.push_back(lv.M(0, 0).convert_to<std::uint64_t>());
        k.push_back(lv.E(0, 0).convert_to<std::uint64_t>());
    }
    std::set<Rational> vals;
    for (const auto& st : sys.seed.strata)
        vals.insert(
            r_infty_dirac(n, k, st.locdim, TailDescriptor::truncate()).bracket.upper);
    return RationalVector(vals.begin(), vals.end());
}

}  // namespace

CompareReport compare_invariants(const VilladsenSystem& a, const VilladsenSystem& b) {
    a.validate();
    b.validate();
    CompareReport rep;
    rep.r_last_a = sorted_r_last(a);
    rep.r_last_b = sorted_r_last(b);
    rep.r_sets_equal = rep.r_last_a == rep.r_last_b;

    rep.rc_unit_a = rc_unit(a);
    rep.rc_unit_b = rc_unit(b);
    rep.rc_brackets_disjoint = rep.rc_unit_a.disjoint_from(rep.rc_unit_b);
    rep.rc_upper_equal = rep.rc_unit_a.upper == rep.rc_unit_b.upper;

    if (is_uhf(a) && is_uhf(b)) {
        rep.dirac_a = dirac_set(a);
        rep.dirac_b = dirac_set(b);
        rep.dirac_sets_equal = *rep.dirac_a == *rep.dirac_b;
    }

    rep.distinguished = !rep.r_sets_equal || rep.rc_brackets_disjoint || !rep.dirac_sets_equal;
    rep.verdict = rep.distinguished ? "invariants distinguished at truncation"
                                    : "not distinguished at truncation";
    return rep;
}

}  // namespace villab
