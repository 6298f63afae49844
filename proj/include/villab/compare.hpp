#pragma once

// Invariant comparison of two systems at truncation: last-stage r value sets
// on extreme traces (up to vertex permutation), rc brackets for the units,
// and Dirac-trace value sets for UHF-type inputs.  The verdict is only ever
// "distinguished at truncation" or "not distinguished at truncation".

#include <villab/core_model.hpp>
#include <villab/hp_family.hpp>  // Bracket

#include <optional>
#include <string>

namespace villab {

struct CompareReport {
    RationalVector r_last_a, r_last_b;       // sorted last-stage r values
    Bracket rc_unit_a, rc_unit_b;            // unit-corner rc brackets
    std::optional<RationalVector> dirac_a, dirac_b;  // UHF inputs only
    bool r_sets_equal = false;
    bool rc_brackets_disjoint = false;
    bool rc_upper_equal = false;
    bool dirac_sets_equal = true;            // vacuously true for non-UHF
    bool distinguished = false;
    std::string verdict;
};

CompareReport compare_invariants(const VilladsenSystem& a, const VilladsenSystem& b);

}  // namespace villab
