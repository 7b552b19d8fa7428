#pragma once

#include "tsncalc/curve.hpp"
#include "tsncalc/trace.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace tsncalc {

// Token-bucket (sigma, rho) traffic with packet lengths in [l_min, l_max].
struct FlowSpec {
    Rational sigma;  // bits
    Rational rho;    // bits/second
    Rational l_min;  // bits
    Rational l_max;  // bits

    // Throws ParameterError unless 0 < l_min <= l_max <= sigma and rho >= 0.
    void validate() const;
    Curve arrival_curve() const { return Curve::token_bucket(sigma, rho); }

    friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

// Min-plus service curve (system provides beta).
struct ServiceCurve {
    Curve beta;
    friend bool operator==(const ServiceCurve&, const ServiceCurve&) = default;
};

// Max-plus g-server: d(n) <= max_m {a(m) + g(L(m,n))}.
struct GServer {
    Curve g;
    friend bool operator==(const GServer&, const GServer&) = default;
};

// g^x-server: d(n) <= max_m {a(m) + g(L(m,n)) + offset} + x(l(n)).
//
// `offset` lets a model carry an affine g whose intercept is negative, such as
// v/I + (1/c - 1/I) l_min. The curve stored in `g` stays in the nonnegative
// class; the model's g-function is g(v) + offset. Offsets are always <= 0:
// nonnegative ones are folded into `g` by make_gx_server.
struct GxServer {
    Curve g;
    Curve x;
    bool exact = false;
    Rational offset;

    // Positive part of g + offset, i.e. the model's g-function inside the
    // nonnegative class.
    Curve g_clipped() const { return shift_compose(g, 0, offset); }

    friend bool operator==(const GxServer&, const GxServer&) = default;
};

using ServerModel = std::variant<ServiceCurve, GServer, GxServer>;

struct ArrivalCurve {
    Curve alpha;
    friend bool operator==(const ArrivalCurve&, const ArrivalCurve&) = default;
};

struct GRegular {
    Curve g;
    friend bool operator==(const GRegular&, const GRegular&) = default;
};

using TrafficModel = std::variant<ArrivalCurve, GRegular>;

// Builds v -> rate * v + intercept as a g^x model, folding a nonnegative
// intercept into the curve and keeping a negative one as the offset.
GxServer make_gx_server(const Rational& rate, const Rational& intercept, Curve x, bool exact = false);

// v -> alpha_down(v + l_min).
Curve arrival_to_g_regular(const Curve& alpha, const Rational& l_min);
// t -> g1_up(t) + l_max, with alpha(0) = 0.
Curve g_regular_to_arrival(const Curve& g1, const Rational& l_max);
// beta_up.
Curve service_to_g_server(const Curve& beta);
// g2_down.
Curve g_server_to_service(const Curve& g2);

// g^x -> g-server with g1(v) = g(v) + offset + x(l_max).
GServer relax_to_g_server(const GxServer& model, const Rational& l_max);
// g-server -> g^x-server with g2(v) = g(v) - x(l_min) and the chosen x.
GxServer g_server_to_gx(const GServer& model, Curve x, const Rational& l_min);

enum class RelaxDirection { toG, fromG };
// Dispatches to relax_to_g_server (toG: l_max is used) or g_server_to_gx
// (fromG: the GxServer's g is read as the g-server and its x as the chosen x;
// l_min is used).
ServerModel gx_relax(const GxServer& model, const Rational& l_min, const Rational& l_max, RelaxDirection direction);

// Guaranteed-rate server: g(v) = v/R + E, x(v) = v/R.
GxServer gr_server(const Rational& rate, const Rational& latency);

// GRC(n) = max{a(n), GRC(n-1)} + l(n)/R with GRC(0) = 0, for n = 1..N.
std::vector<Rational> grc_clock(const PacketTrace& trace, const Rational& rate);

struct PreconditionWitness {
    Rational v;
    Rational w;
    Rational lhs;  // x(w), or its limit
    Rational rhs;  // g(v + w) - g(v), or its limit
};

struct PreconditionResult {
    bool holds = true;
    std::optional<PreconditionWitness> witness;
};

// Checks x(w) <= g(v + w) - g(v) for all v in [0, v_max], w in [0, w_max].
// The difference is piecewise linear on the cells cut out by the lines v = b,
// w = c and v + w = b (b, c breakpoints of g and x), so it is checked at every
// vertex of that arrangement: the point value plus the limit from every
// adjacent cell and along every adjacent edge. The first violation in
// (v, w) order is returned.
PreconditionResult check_gx_precondition(const Curve& g, const Curve& x, const Rational& v_max,
                                         const Rational& w_max);

}  // namespace tsncalc
