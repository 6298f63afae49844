#include <villab/trace_geometry.hpp>

#include <algorithm>

namespace villab {

void CornerProjection::validate(const VilladsenSystem& system) const {
    if (ranks.size() != system.vertex_count(stage))
        throw ValidationError("projection: expected " +
                              std::to_string(system.vertex_count(stage)) +
                              " ranks at stage " + std::to_string(stage) + ", got " +
                              std::to_string(ranks.size()));
    IntVector ut = compute_u_tilde(system, stage);
    bool any_positive = false;
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        if (ranks[j] < 0)
            throw ValidationError("projection: negative rank at vertex " + std::to_string(j + 1));
        if (ranks[j] > ut[j])
            throw ValidationError("projection: rank " + ranks[j].str() + " exceeds u~ = " +
                                  ut[j].str() + " at vertex " + std::to_string(j + 1));
        if (ranks[j] > 0) any_positive = true;
    }
    if (!any_positive) throw ValidationError("projection: all ranks zero");
}

RationalVector trace_of_projection(const VilladsenSystem& system, const CornerProjection& p,
                                   std::size_t at) {
    p.validate(system);
    if (at < p.stage)
        throw ValidationError("trace_of_projection: stage " + std::to_string(at) +
                              " precedes projection stage " + std::to_string(p.stage));
    IntVector ut = compute_u_tilde(system, at);
    IntVector pushed = p.ranks;
    if (at > p.stage) pushed = villab::apply(compose(system, p.stage, at).total, p.ranks);
    RationalVector tau(pushed.size());
    for (std::size_t j = 0; j < tau.size(); ++j) tau[j] = Rational(pushed[j], ut[j]);
    return tau;
}

CornerRcResult rc_corner(const VilladsenSystem& system, const CornerProjection& p,
                         std::size_t at) {
    CornerRcResult out;
    out.trace_vector = trace_of_projection(system, p, at);
    for (std::size_t j = 0; j < out.trace_vector.size(); ++j)
        if (out.trace_vector[j] == 0)
            throw ValidationError("section unbounded at stage " + std::to_string(at) +
                                  "; deepen the stage or the projection is not full (tau_" +
                                  std::to_string(j + 1) + "(p) = 0)");

    StageAffine r = r0_stage(system, at);

    // Largest observed Cauchy decrement, used to bracket the unknown limit:
    // r_infinity lies in [r_at - D, r_at] entrywise as far as the data shows.
    Rational decrement = 0;
    for (std::size_t i = 1; i < at; ++i) {
        StageAffine pushed = pushforward(system, r0_stage(system, i), at);
        RationalVector diff(r.values.size());
        for (std::size_t j = 0; j < diff.size(); ++j)
            diff[j] = pushed.values[j] - r.values[j];
        decrement = std::max(decrement, sup_norm(diff));
    }

    bool first = true;
    for (std::size_t j = 0; j < r.values.size(); ++j) {
        Rational upper = r.values[j] / out.trace_vector[j];
        Rational reduced = r.values[j] - decrement;
        if (reduced < 0) reduced = 0;
        Rational lower = reduced / out.trace_vector[j];
        if (first || upper > out.rc_upper) {
            out.rc_upper = upper;
            out.argmax_vertex = j;
        }
        if (first || lower > out.rc_lower) out.rc_lower = lower;
        first = false;
    }
    return out;
}

}  // namespace villab
