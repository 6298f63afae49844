#include <villab/uhf_locdim.hpp>

#include <algorithm>
#include <set>

namespace villab {

std::uint64_t StratumProfile::power() const {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

BigInt StratumProfile::locdim(const SeedSpace& seed) const {
    if (counts.size() != seed.strata.size())
        throw ValidationError("profile: expected " + std::to_string(seed.strata.size()) +
                              " stratum counts, got " + std::to_string(counts.size()));
    BigInt d = 0;
    for (std::size_t s = 0; s < counts.size(); ++s)
        d += BigInt(counts[s]) * seed.strata[s].locdim;
    return d;
}

namespace {

// prod_{m < s} of f(n_m, k_m), stages 1-based; empty product for s = 1.
BigInt product_below(const std::vector<std::uint64_t>& n_seq,
                     const std::vector<std::uint64_t>& k_seq, std::size_t s, bool with_k) {
    if (s > n_seq.size() + 1)
        throw ValidationError("stage " + std::to_string(s) + " beyond available data");
    BigInt p = 1;
    for (std::size_t m = 0; m + 1 < s; ++m) p *= BigInt(n_seq[m]) + (with_k ? k_seq[m] : 0);
    return p;
}

// P_{s-1} = prod_{m < s} n_m / (n_m + k_m).
Rational dimension_ratio(const std::vector<std::uint64_t>& n_seq,
                         const std::vector<std::uint64_t>& k_seq, std::size_t s) {
    return Rational(product_below(n_seq, k_seq, s, false),
                    product_below(n_seq, k_seq, s, true));
}

}  // namespace

Rational r_s_on_stratum(const std::vector<std::uint64_t>& n_seq,
                        const std::vector<std::uint64_t>& k_seq, std::size_t s,
                        const SeedSpace& seed, const StratumProfile& profile) {
    if (n_seq.size() != k_seq.size())
        throw ValidationError("uhf: n and k sequences have different lengths");
    seed.validate();
    BigInt power = product_below(n_seq, k_seq, s, false);
    if (BigInt(profile.power()) != power)
        throw ValidationError("profile covers " + std::to_string(profile.power()) +
                              " factors; stage " + std::to_string(s) + " needs " + power.str());
    return Rational(profile.locdim(seed), 2 * product_below(n_seq, k_seq, s, true));
}

Rational tail_bound(const std::vector<std::uint64_t>& n_seq,
                    const std::vector<std::uint64_t>& k_seq, std::uint64_t dim,
                    std::size_t s, std::size_t t) {
    if (n_seq.size() != k_seq.size())
        throw ValidationError("uhf: n and k sequences have different lengths");
    if (s >= t)
        throw ValidationError("tail_bound: need s < t, got s=" + std::to_string(s) +
                              ", t=" + std::to_string(t));
    return Rational(dim, 2) *
           (dimension_ratio(n_seq, k_seq, s) - dimension_ratio(n_seq, k_seq, t));
}

TailDescriptor TailDescriptor::certified(Rational lower) {
    if (lower <= 0 || lower > 1)
        throw ValidationError("tail: certified lower bound must lie in (0, 1], got " +
                              to_string(lower));
    TailDescriptor t;
    t.certified_lower = std::move(lower);
    return t;
}

DiracValue r_infty_dirac(const std::vector<std::uint64_t>& n_seq,
                         const std::vector<std::uint64_t>& k_seq, std::uint64_t locdim_x,
                         const TailDescriptor& tail) {
    if (n_seq.size() != k_seq.size())
        throw ValidationError("uhf: n and k sequences have different lengths");
    Rational upper = Rational(locdim_x, 2) * dimension_ratio(n_seq, k_seq, n_seq.size() + 1);
    DiracValue out;
    out.bracket.upper = upper;
    if (tail.certified_lower) {
        out.bracket.lower = upper * *tail.certified_lower;
    } else {
        out.bracket.lower = 0;
        out.tail_unknown = true;
    }
    return out;
}

SeedSeparationReport seed_separation(const SeedSpace& seed_a, const SeedSpace& seed_b,
                                     const std::vector<std::uint64_t>& n_seq,
                                     const std::vector<std::uint64_t>& k_seq) {
    seed_a.validate();
    seed_b.validate();
    auto dirac_set = [&](const SeedSpace& seed) {
        std::set<Rational> vals;
        for (const auto& st : seed.strata)
            vals.insert(r_infty_dirac(n_seq, k_seq, st.locdim, TailDescriptor::truncate())
                            .bracket.upper);
        return RationalVector(vals.begin(), vals.end());
    };
    SeedSeparationReport rep;
    rep.dirac_values_a = dirac_set(seed_a);
    rep.dirac_values_b = dirac_set(seed_b);
    bool a_const = rep.dirac_values_a.size() == 1;
    bool b_const = rep.dirac_values_b.size() == 1;
    rep.distinguished = a_const != b_const;
    rep.max_values_equal = rep.dirac_values_a.back() == rep.dirac_values_b.back();
    rep.verdict = rep.distinguished ? "invariants differ" : "no separation by this invariant";
    return rep;
}

Bracket rc_corner_uhf(const std::vector<std::uint64_t>& n_seq,
                      const std::vector<std::uint64_t>& k_seq, std::uint64_t dim,
                      const BigInt& p_rank, std::size_t p_stage, const TailDescriptor& tail) {
    BigInt matrix_size = product_below(n_seq, k_seq, p_stage, true);
    if (p_rank <= 0 || p_rank > matrix_size)
        throw ValidationError("projection rank " + p_rank.str() +
                              " outside (0, " + matrix_size.str() + "] at stage " +
                              std::to_string(p_stage));
    // tau(p) is constant for a constant-rank p, so the sup over the section
    // {tau(p)=1} is attained at Dirac traces of top-locdim points.
    Rational tau_p(p_rank, matrix_size);
    DiracValue top = r_infty_dirac(n_seq, k_seq, dim, tail);
    return {top.bracket.lower / tau_p, top.bracket.upper / tau_p};
}

}  // namespace villab
