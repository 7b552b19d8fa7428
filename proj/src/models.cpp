#include "tsncalc/models.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace tsncalc {

void FlowSpec::validate() const {
    if (l_min.sign() <= 0) throw ParameterError("flow: lMin must be positive");
    if (l_max < l_min) throw ParameterError("flow: lMax must be >= lMin");
    if (sigma < l_max) throw ParameterError("flow: sigma must be >= lMax");
    if (rho.sign() < 0) throw ParameterError("flow: rho must be >= 0");
}

GxServer make_gx_server(const Rational& rate, const Rational& intercept, Curve x, bool exact) {
    if (intercept.sign() >= 0) return GxServer{Curve::affine(rate, intercept), std::move(x), exact, 0};
    return GxServer{Curve::affine(rate, 0), std::move(x), exact, intercept};
}

Curve arrival_to_g_regular(const Curve& alpha, const Rational& l_min) {
    return shift_compose(lower_pseudo_inverse(alpha), l_min, 0);
}

Curve g_regular_to_arrival(const Curve& g1, const Rational& l_max) {
    return shift_compose(upper_pseudo_inverse(g1), 0, l_max).with_zero_at_origin();
}

Curve service_to_g_server(const Curve& beta) { return upper_pseudo_inverse(beta); }

Curve g_server_to_service(const Curve& g2) { return lower_pseudo_inverse(g2); }

GServer relax_to_g_server(const GxServer& model, const Rational& l_max) {
    return GServer{shift_compose(model.g, 0, model.offset + model.x.at(l_max))};
}

GxServer g_server_to_gx(const GServer& model, Curve x, const Rational& l_min) {
    const Rational shift = x.at(l_min);
    return GxServer{model.g, std::move(x), false, -shift};
}

ServerModel gx_relax(const GxServer& model, const Rational& l_min, const Rational& l_max, RelaxDirection direction) {
    if (direction == RelaxDirection::toG) return relax_to_g_server(model, l_max);
    if (model.offset.sign() != 0) throw ParameterError("fromG expects a plain g-server (offset 0)");
    return g_server_to_gx(GServer{model.g}, model.x, l_min);
}

GxServer gr_server(const Rational& rate, const Rational& latency) {
    if (rate.sign() <= 0) throw ParameterError("GR server needs R > 0");
    if (latency.sign() < 0) throw ParameterError("GR server needs E >= 0");
    return GxServer{Curve::affine(Rational(1) / rate, latency), Curve::affine(Rational(1) / rate, 0), false, 0};
}

std::vector<Rational> grc_clock(const PacketTrace& trace, const Rational& rate) {
    if (rate.sign() <= 0) throw ParameterError("GRC needs R > 0");
    std::vector<Rational> out;
    out.reserve(trace.size());
    Rational clock = 0;
    for (std::size_t n = 1; n <= trace.size(); ++n) {
        clock = max(trace.time(n), clock) + trace.length(n) / rate;
        out.push_back(clock);
    }
    return out;
}

namespace {

Side side_of(int direction) {
    if (direction > 0) return Side::right;
    if (direction < 0) return Side::left;
    return Side::point;
}

}  // namespace

PreconditionResult check_gx_precondition(const Curve& g, const Curve& x, const Rational& v_max,
                                         const Rational& w_max) {
    if (v_max.sign() < 0 || w_max.sign() < 0) throw ParameterError("precondition horizons must be >= 0");
    const Rational reach = v_max + w_max;

    std::set<Rational> g_points;
    for (const auto& b : g.critical_points())
        if (b <= reach) g_points.insert(b);
    std::set<Rational> v_lines{Rational(0), v_max};
    for (const auto& b : g_points)
        if (b <= v_max) v_lines.insert(b);
    std::set<Rational> w_lines{Rational(0), w_max};
    for (const auto& c : x.critical_points())
        if (c <= w_max) w_lines.insert(c);

    std::set<std::pair<Rational, Rational>> vertices;
    for (const auto& v : v_lines) {
        for (const auto& w : w_lines) vertices.emplace(v, w);
        for (const auto& b : g_points) {
            const Rational w = b - v;
            if (w.sign() >= 0 && w <= w_max) vertices.emplace(v, w);
        }
    }
    for (const auto& w : w_lines) {
        for (const auto& b : g_points) {
            const Rational v = b - w;
            if (v.sign() >= 0 && v <= v_max) vertices.emplace(v, w);
        }
    }

    // Point value, the six edge directions of the arrangement, and one
    // direction strictly inside each of the six sectors they bound.
    static constexpr std::array<std::pair<int, int>, 13> directions{{
        {0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 2}, {-1, 1}, {-2, 1},
        {-1, 0}, {-1, -1}, {0, -1}, {1, -2}, {1, -1}, {2, -1},
    }};

    for (const auto& [v, w] : vertices) {
        for (const auto& [dv, dw] : directions) {
            if ((dv < 0 && v.sign() == 0) || (dv > 0 && v == v_max)) continue;
            if ((dw < 0 && w.sign() == 0) || (dw > 0 && w == w_max)) continue;
            const ExtendedValue far = g.eval(v + w, side_of(dv + dw));
            const ExtendedValue near = g.eval(v, side_of(dv));
            if (near.is_infinite() || far.is_infinite()) continue;
            const Rational lhs = x.at(w, side_of(dw));
            const Rational rhs = far.value() - near.value();
            if (lhs > rhs) return {false, PreconditionWitness{v, w, lhs, rhs}};
        }
    }
    return {};
}

}  // namespace tsncalc
