#include "tsncalc/bounds.hpp"

#include <algorithm>

namespace tsncalc {

ExtendedValue bound_min_plus(const Curve& alpha, const Curve& beta) { return horizontal_distance(alpha, beta); }

ExtendedValue bound_max_plus(const Curve& g1, const Curve& g2) { return vertical_distance(g1, g2); }

ExtendedValue bound_mapped(const Curve& alpha, const Curve& beta, const Rational& l_min) {
    return vertical_distance(arrival_to_g_regular(alpha, l_min), service_to_g_server(beta));
}

PreconditionResult check_gx_precondition_global(const Curve& g, const Curve& x) {
    Rational horizon = 0;
    for (const auto& p : g.critical_points()) horizon = max(horizon, p);
    for (const auto& p : x.critical_points()) horizon = max(horizon, p);
    horizon += 1;
    PreconditionResult result = check_gx_precondition(g, x, horizon, horizon);
    if (!result.holds || g.unbounded() || !(x.tail_slope() > g.tail_slope())) return result;
    // Past the horizon the slack changes at rate g's tail slope minus x's, so
    // it turns negative far enough out.
    Rational reach = horizon;
    while (result.holds) {
        reach *= 2;
        result = check_gx_precondition(g, x, horizon, reach);
    }
    return result;
}

ExtendedValue bound_integrated(const Curve& alpha, const GxServer& model) {
    const PreconditionResult pre = check_gx_precondition_global(model.g, model.x);
    if (!pre.holds) {
        const auto& w = *pre.witness;
        throw PreconditionError("g^x precondition fails at v = " + w.v.str() + ", w = " + w.w.str() + ": x(w) = " +
                                    w.lhs.str() + " > g(v+w) - g(v) = " + w.rhs.str(),
                                w);
    }
    return vertical_distance(lower_pseudo_inverse(alpha), model.g) + model.offset;
}

BoundReport compare_table(const FlowSpec& flow, const Rational& c) {
    flow.validate();
    if (c.sign() <= 0) throw ParameterError("link rate must be positive");
    if (flow.rho > c) throw UtilizationError("rho = " + flow.rho.str() + " exceeds the link rate " + c.str());
    const Curve alpha = flow.arrival_curve();
    const Curve beta = Curve::latency_rate(c, flow.l_max / c);
    const Curve g2 = Curve::affine(Rational(1) / c, flow.l_max / c);
    BoundReport r;
    r.min_plus = bound_min_plus(alpha, beta);
    r.max_plus = bound_max_plus(arrival_to_g_regular(alpha, flow.l_min), g2);
    r.mapped = bound_mapped(alpha, beta, flow.l_min);
    r.integrated = bound_integrated(alpha, gr_server(c, 0));
    r.assumptions = {flow.rho, c};
    return r;
}

}  // namespace tsncalc
