#pragma once

// Generalized comparison-radius computations for single-vertex (UHF-type)
// systems over simplicial-complex seeds: local-dimension stratum profiles,
// stagewise r_s values, the uniform tail bound, closed-form limits on Dirac
// traces, corner rc, and the seed-space separation report.
//
// A point of the product power X^N is summarized by how many of its factors
// lie in each stratum; loc.dim is additive over the factors.

#include <villab/core_model.hpp>
#include <villab/hp_family.hpp>  // Bracket

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace villab {

/// Multiset of per-factor stratum choices for a point of X^N, as counts
/// aligned with the seed's strata list.
struct StratumProfile {
    std::vector<std::uint64_t> counts;

    std::uint64_t power() const;

    /// loc.dim of the product point: sum of counts * locdim.
    BigInt locdim(const SeedSpace& seed) const;
};

/// r_s on the profile's stratum of X^{n_1...n_{s-1}}:
/// (1/2) * loc.dim / ((n_1+k_1)...(n_{s-1}+k_{s-1})).
/// The profile must cover exactly N = n_1...n_{s-1} factors.
Rational r_s_on_stratum(const std::vector<std::uint64_t>& n_seq,
                        const std::vector<std::uint64_t>& k_seq, std::size_t s,
                        const SeedSpace& seed, const StratumProfile& profile);

/// ||r_s - r_t||_inf <= (dim/2) * (P_{s-1} - P_{t-1}), P_m = prod_{i<=m} n_i/(n_i+k_i).
Rational tail_bound(const std::vector<std::uint64_t>& n_seq,
                    const std::vector<std::uint64_t>& k_seq, std::uint64_t dim,
                    std::size_t s, std::size_t t);

/// Tail descriptor for limit quantities: either plain truncation (the lower
/// end of every bracket is 0, declared unknown) or a user-certified lower
/// bound on the infinite product prod_{i > last} n_i/(n_i+k_i).
struct TailDescriptor {
    std::optional<Rational> certified_lower;  // in (0, 1]; nullopt = truncate

    static TailDescriptor truncate() { return {}; }
    static TailDescriptor certified(Rational lower);
};

struct DiracValue {
    Bracket bracket;
    bool tail_unknown = false;
};

/// r_infinity on the Dirac-limit trace of a constant point in a stratum of
/// local dimension locdim_x: locdim_x * (1/2) * (limit product), bracketed
/// per the tail descriptor.  Never extrapolates.
DiracValue r_infty_dirac(const std::vector<std::uint64_t>& n_seq,
                         const std::vector<std::uint64_t>& k_seq, std::uint64_t locdim_x,
                         const TailDescriptor& tail);

struct SeedSeparationReport {
    RationalVector dirac_values_a;  // sorted, deduplicated upper values
    RationalVector dirac_values_b;
    bool distinguished = false;
    bool max_values_equal = false;
    std::string verdict;
};

/// Constant-vs-nonconstant test of r_infinity on Dirac traces for two seeds
/// under the same (n, k): "invariants differ" when exactly one value set is
/// a singleton.
SeedSeparationReport seed_separation(const SeedSpace& seed_a, const SeedSpace& seed_b,
                                     const std::vector<std::uint64_t>& n_seq,
                                     const std::vector<std::uint64_t>& k_seq);

/// Corner rc for a constant-rank projection in a UHF-type system:
/// (dim * (1/2) * limit-product bracket) / (p_rank / prod_{m < p_stage}(n_m+k_m)).
Bracket rc_corner_uhf(const std::vector<std::uint64_t>& n_seq,
                      const std::vector<std::uint64_t>& k_seq, std::uint64_t dim,
                      const BigInt& p_rank, std::size_t p_stage, const TailDescriptor& tail);

}  // namespace villab
