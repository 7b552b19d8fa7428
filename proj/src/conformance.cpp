#include "tsncalc/conformance.hpp"

#include <algorithm>
#include <sstream>

namespace tsncalc {

std::string Violation::describe() const {
    std::ostringstream os;
    os << definition << " violated";
    if (m && n) {
        os << " at (m, n) = (" << *m << ", " << *n << ")";
    } else if (n) {
        os << " at n = " << *n;
    } else if (s && t) {
        os << " at (s, t) = (" << *s << ", " << *t << ")";
    } else if (t) {
        os << " at t = " << *t;
    }
    os << ": lhs = " << lhs << ", rhs = " << rhs;
    return os.str();
}

namespace {

std::vector<Rational> distinct_times(const PacketTrace& trace) {
    std::vector<Rational> out;
    for (const auto& p : trace.packets())
        if (out.empty() || out.back() != p.time) out.push_back(p.time);
    return out;
}

}  // namespace

CheckResult check_arrival_curve(const PacketTrace& trace, const Curve& alpha) {
    const auto times = distinct_times(trace);
    std::optional<Curve> alpha_down;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const Rational& s = times[i];
        const Rational before = trace.cumulative(s);
        for (std::size_t j = i; j < times.size(); ++j) {
            const Rational delta = times[j] - s;
            const Rational bits = trace.cumulative_right(times[j]) - before;
            if (ExtendedValue(bits) <= alpha.eval(delta, Side::right)) continue;

            // alpha < bits on (delta, alpha_down(bits)); the window must also
            // close before the next arrival.
            if (!alpha_down) alpha_down = lower_pseudo_inverse(alpha);
            std::optional<Rational> upper;
            if (const ExtendedValue inv = alpha_down->eval(bits); inv.is_finite()) upper = inv.value();
            if (j + 1 < times.size()) {
                const Rational gap_end = delta + (times[j + 1] - times[j]);
                upper = upper ? min(*upper, gap_end) : gap_end;
            }
            const Rational w = upper ? (delta + *upper) / 2 : delta + 1;
            Violation v;
            v.definition = "arrival curve";
            v.s = s;
            v.t = s + w;
            v.lhs = bits;
            v.rhs = alpha.eval(w);
            return v;
        }
    }
    return std::nullopt;
}

namespace {

// inf over s in [0, t] of A(s) + beta(t - s); A is piecewise constant and
// left-continuous, so the infimum sits at an arrival instant or at s = t.
ExtendedValue service_infimum(const PacketTrace& input, const std::vector<Rational>& arrivals, const Curve& beta,
                              const Rational& t) {
    ExtendedValue best = ExtendedValue(input.cumulative(t)) + beta.at(0);
    for (const auto& a : arrivals) {
        if (a > t) break;
        const ExtendedValue v = beta.eval(t - a) + input.cumulative(a);
        if (v < best) best = v;
    }
    return best;
}

}  // namespace

CheckResult check_service_curve(const PacketTrace& input, const PacketTrace& output, const Curve& beta) {
    require_matched(input, output);
    if (beta.at(0).sign() != 0) throw ParameterError("service curve must satisfy beta(0) = 0");
    const auto arrivals = distinct_times(input);
    const auto beta_points = beta.critical_points();

    Rational previous = 0;
    for (const auto& td : distinct_times(output)) {
        const Rational served = output.cumulative(td);
        const ExtendedValue need = service_infimum(input, arrivals, beta, td);
        if (need <= ExtendedValue(served)) {
            previous = td;
            continue;
        }

        // On (lo, td) no arrival, departure or beta breakpoint intervenes, so
        // each candidate s contributes a linear function of t.
        Rational lo = previous;
        for (const auto& a : arrivals) {
            if (a >= td) break;
            lo = max(lo, a);
            for (const auto& b : beta_points)
                if (a + b < td) lo = max(lo, a + b);
        }
        bool interior = true;
        Rational threshold = lo;
        const ExtendedValue served_x(served);
        auto consider = [&](const ExtendedValue& v0, const ExtendedValue& v1) {
            if (v1 <= served_x) {
                interior = false;
            } else if (v0 <= served_x) {
                const Rational t = lo + (served - v0.value()) / (v1.value() - v0.value()) * (td - lo);
                threshold = max(threshold, t);
            }
        };
        const ExtendedValue own(input.cumulative(td));
        consider(own, own);
        for (const auto& a : arrivals) {
            if (a >= td) break;
            const Rational base = input.cumulative(a);
            consider(beta.eval(lo - a, Side::right) + base, beta.eval(td - a, Side::left) + base);
        }
        const Rational witness = interior ? (threshold + td) / 2 : td;

        Violation v;
        v.definition = "service curve";
        v.t = witness;
        v.lhs = output.cumulative(witness);
        v.rhs = service_infimum(input, arrivals, beta, witness);
        return v;
    }
    return std::nullopt;
}

CheckResult check_g_regular(const PacketTrace& trace, const Curve& g) {
    for (std::size_t n = 1; n <= trace.size(); ++n) {
        for (std::size_t m = n + 1; m-- > 0;) {
            const Rational gap = trace.time(n) - trace.time(m);
            const ExtendedValue need = g.eval(trace.cumulative_length(m, n));
            if (ExtendedValue(gap) >= need) continue;
            Violation v;
            v.definition = "g-regular";
            v.m = m;
            v.n = n;
            v.lhs = gap;
            v.rhs = need;
            return v;
        }
    }
    return std::nullopt;
}

std::vector<ExtendedValue> max_plus_envelope(const PacketTrace& input, const Curve& g) {
    std::vector<ExtendedValue> out;
    out.reserve(input.size());
    for (std::size_t n = 1; n <= input.size(); ++n) {
        ExtendedValue best = g.eval(input.cumulative_length(0, n));
        for (std::size_t m = 1; m <= n; ++m) best = max(best, g.eval(input.cumulative_length(m, n)) + input.time(m));
        out.push_back(best);
    }
    return out;
}

namespace {

CheckResult check_departure_bound(const PacketTrace& input, const PacketTrace& output, const Curve& g,
                                  const Curve* x, const Rational& offset, bool exact, const char* name) {
    require_matched(input, output);
    const auto envelope = max_plus_envelope(input, g);
    for (std::size_t n = 1; n <= input.size(); ++n) {
        ExtendedValue bound = envelope[n - 1] + offset;
        if (x) {
            const ExtendedValue xv = x->eval(input.length(n));
            bound = xv.is_infinite() ? xv : bound + xv.value();
        }
        const ExtendedValue d(output.time(n));
        const bool fails = exact ? d != bound : d > bound;
        if (!fails) continue;
        Violation v;
        v.definition = name;
        v.n = n;
        v.lhs = d;
        v.rhs = bound;
        return v;
    }
    return std::nullopt;
}

}  // namespace

CheckResult check_g_server(const PacketTrace& input, const PacketTrace& output, const Curve& g) {
    return check_departure_bound(input, output, g, nullptr, 0, false, "g-server");
}

CheckResult check_gx_server(const PacketTrace& input, const PacketTrace& output, const Curve& g, const Curve& x,
                            bool exact) {
    return check_departure_bound(input, output, g, &x, 0, exact, exact ? "exact g^x-server" : "g^x-server");
}

CheckResult check_gx_server(const PacketTrace& input, const PacketTrace& output, const GxServer& model) {
    return check_departure_bound(input, output, model.g, &model.x, model.offset, model.exact,
                                 model.exact ? "exact g^x-server" : "g^x-server");
}

DelayStats delay_stats(const PacketTrace& input, const PacketTrace& output) {
    require_matched(input, output);
    DelayStats stats;
    stats.per_packet.reserve(input.size());
    for (std::size_t n = 1; n <= input.size(); ++n) {
        stats.per_packet.push_back(output.time(n) - input.time(n));
        stats.max_packet_delay = max(stats.max_packet_delay, stats.per_packet.back());
    }
    // At a(n)+ the backlog reaches the last packet sharing that arrival time;
    // it is cleared once that packet departs.
    Rational sup = 0;
    for (std::size_t n = 1; n <= input.size(); ++n) {
        std::size_t last = n;
        while (last < input.size() && input.time(last + 1) == input.time(n)) ++last;
        sup = max(sup, output.time(last) - input.time(n));
        n = last;
    }
    stats.virtual_delay_sup = sup;
    return stats;
}

}  // namespace tsncalc
