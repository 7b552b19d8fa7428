#pragma once

#include "tsncalc/curve.hpp"
#include "tsncalc/models.hpp"
#include "tsncalc/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsncalc {

// A failed instance of one of the trace definitions. `lhs` and `rhs` are the
// two sides of the definition's inequality as written, e.g. A(s,t) <= alpha(t-s)
// or A*(t) >= inf_s {A(s) + beta(t-s)}.
struct Violation {
    std::string definition;  // "arrival curve", "service curve", "g-regular", "g-server", "g^x-server"
    std::optional<Rational> s;
    std::optional<Rational> t;
    std::optional<std::size_t> m;
    std::optional<std::size_t> n;
    ExtendedValue lhs;
    ExtendedValue rhs;

    std::string describe() const;
};

// nullopt means the trace conforms.
using CheckResult = std::optional<Violation>;

// A(s, t) <= alpha(t - s) for all 0 <= s <= t. The worst windows start at an
// arrival (included) and end just after another, so each such pair is
// compared with alpha's right limit. The witness window lies strictly inside
// the violating range.
CheckResult check_arrival_curve(const PacketTrace& trace, const Curve& alpha);

// A*(t) >= inf_{0<=s<=t} {A(s) + beta(t - s)} for all t >= 0. Requires
// beta(0) = 0. Checked at every departure instant; the witness t is the
// midpoint of the open sub-interval on which the inequality fails, or the
// departure instant when only that point fails.
CheckResult check_service_curve(const PacketTrace& input, const PacketTrace& output, const Curve& beta);

// a(n) - a(m) >= g(L(m, n)) for all 0 <= m <= n. Scanned with n ascending and
// m descending.
CheckResult check_g_regular(const PacketTrace& trace, const Curve& g);

// d(n) <= max_{0<=m<=n} {a(m) + g(L(m, n))}.
CheckResult check_g_server(const PacketTrace& input, const PacketTrace& output, const Curve& g);

// d(n) <= max_{0<=m<=n} {a(m) + g(L(m, n))} + x(l(n)), with equality for
// every n when `exact`.
CheckResult check_gx_server(const PacketTrace& input, const PacketTrace& output, const Curve& g, const Curve& x,
                            bool exact);
// Same check for a model whose g-function is model.g + model.offset.
CheckResult check_gx_server(const PacketTrace& input, const PacketTrace& output, const GxServer& model);

// The max-plus bound max_{0<=m<=n} {a(m) + g(L(m, n))} for every n, as used
// by the g-server checks.
std::vector<ExtendedValue> max_plus_envelope(const PacketTrace& input, const Curve& g);

struct DelayStats {
    std::vector<Rational> per_packet;  // d(n) - a(n)
    Rational max_packet_delay;
    ExtendedValue virtual_delay_sup;
};

// Packet delays and the supremum of the virtual delay, taken over the
// instants a(n)+ where it peaks.
DelayStats delay_stats(const PacketTrace& input, const PacketTrace& output);

}  // namespace tsncalc
