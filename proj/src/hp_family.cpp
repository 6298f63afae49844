#include <villab/hp_family.hpp>

#include <algorithm>

namespace villab {

void HPParams::validate() const {
    const std::size_t L = n1.size();
    if (L == 0) throw ValidationError("hp: need at least one level");
    if (n2.size() != L || k1.size() != L || k2.size() != L || k12.size() != L ||
        k21.size() != L)
        throw ValidationError("hp: all six sequences must have the same length");
    for (std::size_t i = 0; i < L; ++i)
        if (n1[i] < 1 || n2[i] < 1)
            throw ValidationError("hp: n entries must be >= 1 (level " +
                                  std::to_string(i + 1) + ")");
    if (dim == 0) throw ValidationError("hp: dim must be positive");
}

VilladsenSystem HPParams::to_system() const {
    validate();
    VilladsenSystem sys;
    sys.seed.dim = dim;
    sys.seed.strata = {{"X", dim}};
    sys.seed.k_contractible = true;
    sys.seed.solid = true;
    sys.seed.connected = true;
    sys.u1 = {BigInt(1), BigInt(1)};
    for (std::size_t i = 0; i < num_levels(); ++i) {
        LevelData lv{IntMatrix(2, 2), IntMatrix(2, 2)};
        lv.M(0, 0) = n1[i];
        lv.M(1, 1) = n2[i];
        lv.E(0, 0) = k1[i];
        lv.E(0, 1) = k12[i];  // evaluations tower 1 -> tower 2
        lv.E(1, 0) = k21[i];  // evaluations tower 2 -> tower 1
        lv.E(1, 1) = k2[i];
        sys.levels.push_back(lv);
    }
    sys.validate();
    return sys;
}

RationalVector compression_coefficients(const HPParams& params) {
    params.validate();
    VilladsenSystem sys = params.to_system();
    RationalVector c(params.num_levels());
    for (std::size_t i = 0; i < params.num_levels(); ++i) {
        IntVector ut = compute_u_tilde(sys, i + 1);
        BigInt a = (BigInt(params.n2[i]) + params.k2[i]) * ut[1];
        BigInt b = BigInt(params.k12[i]) * ut[0] + a;
        BigInt p = BigInt(params.k21[i]) * ut[1];
        BigInt q = (BigInt(params.n1[i]) + params.k1[i]) * ut[0] + p;
        c[i] = Rational(a, b) - Rational(p, q);
    }
    return c;
}

ExtremeCoordinates extreme_coordinates(const HPParams& params, const Rational& threshold) {
    RationalVector c = compression_coefficients(params);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] <= 0)
            throw ValidationError("ordering of extreme preimages lost: c_" +
                                  std::to_string(i + 1) + " = " + to_string(c[i]) + " <= 0");
    ExtremeCoordinates out;
    out.gaps.assign(c.size(), Rational(1));
    Rational tail = 1;
    for (std::size_t i = c.size(); i-- > 0;) {
        tail *= c[i];
        out.gaps[i] = tail;
    }
    out.full_product = out.gaps[0];
    out.above_threshold = out.full_product > threshold;
    return out;
}

namespace {

// Largest one-step decrement of the ratio sequences in sup norm over both
// vertices.  Using the sup-norm decrement (instead of a per-vertex one)
// keeps a single level from producing a spuriously tight bracket on the
// vertex whose ratio happens to stay constant.
Rational sup_decrement(const VilladsenSystem& sys) {
    const std::size_t last = sys.num_stages();
    Rational decrement = 0;
    StageAffine prev = r0_stage(sys, 1);
    for (std::size_t i = 2; i <= last; ++i) {
        StageAffine cur = r0_stage(sys, i);
        for (std::size_t v = 0; v < cur.values.size(); ++v)
            decrement = std::max(decrement, prev.values[v] - cur.values[v]);
        prev = cur;
    }
    return decrement;
}

}  // namespace

std::pair<Bracket, Bracket> r_infinity_at_extremes(const HPParams& params) {
    VilladsenSystem sys = params.to_system();
    const Rational decrement = sup_decrement(sys);
    StageAffine last = r0_stage(sys, sys.num_stages());
    auto bracket = [&](std::size_t v) {
        Bracket b;
        b.upper = last.values[v];
        b.lower = std::max(Rational(0), b.upper - decrement);
        return b;
    };
    return {bracket(0), bracket(1)};
}

FlipReport flip_obstruction(const HPParams& params) {
    FlipReport rep;
    auto [b1, b2] = r_infinity_at_extremes(params);
    rep.r_at_tau1 = b1;
    rep.r_at_tau2 = b2;
    rep.obstructed = b1.disjoint_from(b2);
    rep.verdict = rep.obstructed ? "flip obstructed" : "inconclusive";
    return rep;
}

}  // namespace villab
