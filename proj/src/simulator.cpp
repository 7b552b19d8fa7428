#include "tsncalc/simulator.hpp"

#include "tsncalc/random.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace tsncalc {

// ---------------------------------------------------------------------------
// Traffic generation

namespace {

void require_length_in_range(const FlowSpec& flow, const Rational& l) {
    if (l < flow.l_min || l > flow.l_max)
        throw ParameterError("packet size " + l.str() + " outside [lMin, lMax] = [" + flow.l_min.str() + ", " +
                             flow.l_max.str() + "]");
}

void verify_bucket(const PacketTrace& trace, const FlowSpec& flow) {
    if (auto v = check_arrival_curve(trace, flow.arrival_curve()))
        throw std::logic_error("generated trace breaks its token bucket: " + v->describe());
}

PacketTrace greedy(const GreedyTokenBucket& p, const Rational& horizon) {
    p.flow.validate();
    if (p.packet_size > p.flow.sigma) throw ParameterError("packet size exceeds the bucket size sigma");
    require_length_in_range(p.flow, p.packet_size);
    std::vector<Packet> out;
    Rational tokens = p.flow.sigma;
    Rational t = 0;
    while (t < horizon) {
        if (tokens >= p.packet_size) {
            out.push_back({t, p.packet_size});
            tokens -= p.packet_size;
            continue;
        }
        if (p.flow.rho.sign() == 0) break;
        t += (p.packet_size - tokens) / p.flow.rho;
        tokens = p.packet_size;
    }
    PacketTrace trace(std::move(out));
    verify_bucket(trace, p.flow);
    return trace;
}

PacketTrace lrq(const LrqRegulated& p, const Rational& horizon) {
    if (p.rate.sign() <= 0) throw ParameterError("LRQ rate must be positive");
    std::vector<Packet> out;
    Rational t = 0;
    for (const auto& l : p.sizes) {
        if (l.sign() <= 0) throw ParameterError("LRQ packet sizes must be positive");
        if (t >= horizon) break;
        out.push_back({t, l});
        t += l / p.rate;
    }
    PacketTrace trace(std::move(out));
    if (auto v = check_g_regular(trace, Curve::affine(Rational(1) / p.rate, 0)))
        throw std::logic_error("generated LRQ trace is not g-regular: " + v->describe());
    return trace;
}

PacketTrace random_conforming(const SeededRandomConforming& p, const Rational& horizon) {
    p.flow.validate();
    const Rational end = min(p.horizon, horizon);
    Rng rng(p.seed);
    const FlowSpec& f = p.flow;
    std::vector<Packet> out;
    Rational tokens = f.sigma;
    Rational t = 0;
    while (true) {
        const Rational l = f.l_min + (f.l_max - f.l_min) * Rational(rng.uniform(0, 8), 8);
        if (rng.chance(1, 2)) {
            const Rational scale = f.rho.sign() > 0 ? l / f.rho : Rational(1);
            const Rational extra = scale * rng.uniform_rational(0, 2, 4);
            t += extra;
            tokens = min(f.sigma, tokens + f.rho * extra);
        }
        if (tokens < l) {
            if (f.rho.sign() == 0) break;
            t += (l - tokens) / f.rho;
            tokens = l;
        }
        if (t >= end) break;
        out.push_back({t, l});
        tokens -= l;
    }
    PacketTrace trace(std::move(out));
    verify_bucket(trace, f);
    return trace;
}

}  // namespace

PacketTrace generate_traffic(const TrafficPattern& pattern, const Rational& horizon) {
    struct Visitor {
        const Rational& horizon;
        PacketTrace operator()(const GreedyTokenBucket& p) const { return greedy(p, horizon); }
        PacketTrace operator()(const LrqRegulated& p) const { return lrq(p, horizon); }
        PacketTrace operator()(const Explicit& p) const {
            std::vector<Packet> out;
            for (const auto& pk : p.trace.packets())
                if (pk.time < horizon) out.push_back(pk);
            return PacketTrace(std::move(out));
        }
        PacketTrace operator()(const SeededRandomConforming& p) const { return random_conforming(p, horizon); }
    };
    return std::visit(Visitor{horizon}, pattern);
}

// ---------------------------------------------------------------------------
// Credit trajectory queries

Rational CreditTrajectory::value_before(const Rational& t) const {
    for (const auto& s : segments)
        if (s.start < t && t <= s.end) return s.start_value + s.slope * (t - s.start);
    if (!segments.empty() && t > segments.back().end) return segments.back().end_value();
    return 0;
}

Rational CreditTrajectory::first_nonnegative(const Rational& t) const {
    for (const auto& s : segments) {
        if (s.end < t) continue;
        const Rational from = max(s.start, t);
        const Rational v = s.start_value + s.slope * (from - s.start);
        if (v.sign() >= 0) return from;
        if (s.slope.sign() > 0) {
            const Rational hit = s.start + (-s.start_value) / s.slope;
            if (hit <= s.end) return hit;
        }
    }
    return segments.empty() ? t : max(t, segments.back().end);
}

// ---------------------------------------------------------------------------
// Port simulation

SimResult simulate_port(const PortConfig& cfg, const std::vector<PacketTrace>& arrivals) {
    cfg.validate();
    if (arrivals.size() != cfg.queues.size())
        throw ConfigError("expected " + std::to_string(cfg.queues.size()) + " arrival traces, got " +
                          std::to_string(arrivals.size()));
    const std::size_t nq = cfg.queues.size();
    const Rational& c = cfg.link_rate;

    std::optional<std::size_t> cbs;
    if (auto p = cfg.cbs_priority()) cbs = static_cast<std::size_t>(*p - 1);
    const Rational idle = cbs ? cfg.queues[*cbs].idle_slope : Rational(0);
    const Rational send = idle - c;
    const bool freeze = cbs && cfg.queues[*cbs].frozen_by_higher;

    std::vector<std::size_t> next(nq, 1);
    std::vector<std::deque<std::size_t>> fifo(nq);
    std::vector<std::vector<Rational>> departure(nq), start(nq);
    for (std::size_t q = 0; q < nq; ++q) {
        departure[q].resize(arrivals[q].size());
        start[q].resize(arrivals[q].size());
    }

    struct Transmission {
        std::size_t queue;
        std::size_t n;
        Rational end;
    };
    std::optional<Transmission> tx;
    Rational credit = 0;
    Rational t = 0;
    CreditTrajectory trajectory;
    std::vector<BusyPeriod> busy;

    auto credit_slope = [&]() -> Rational {
        if (tx && tx->queue == *cbs) return send;
        if (freeze && tx && tx->queue < *cbs) return 0;
        if (!fifo[*cbs].empty()) return idle;
        return credit.sign() < 0 ? idle : Rational(0);
    };

    while (true) {
        if (tx && tx->end == t) {
            departure[tx->queue][tx->n - 1] = t;
            const bool own = cbs && tx->queue == *cbs;
            tx.reset();
            if (own && fifo[*cbs].empty() && credit.sign() > 0) {
                credit = 0;
                trajectory.resets.push_back(t);
            }
        }
        for (std::size_t q = 0; q < nq; ++q) {
            while (next[q] <= arrivals[q].size() && arrivals[q].time(next[q]) == t) fifo[q].push_back(next[q]++);
        }
        if (!tx) {
            for (std::size_t q = 0; q < nq; ++q) {
                if (fifo[q].empty()) continue;
                if (cbs && q == *cbs && credit.sign() < 0) continue;
                const std::size_t n = fifo[q].front();
                fifo[q].pop_front();
                start[q][n - 1] = t;
                tx = Transmission{q, n, t + arrivals[q].length(n) / c};
                if (!busy.empty() && busy.back().end == t) {
                    busy.back().end = tx->end;
                } else {
                    busy.push_back({t, tx->end});
                }
                break;
            }
        }

        std::optional<Rational> upcoming;
        auto propose = [&](const Rational& v) { upcoming = upcoming ? min(*upcoming, v) : v; };
        if (tx) propose(tx->end);
        for (std::size_t q = 0; q < nq; ++q)
            if (next[q] <= arrivals[q].size()) propose(arrivals[q].time(next[q]));
        Rational slope = 0;
        if (cbs) {
            slope = credit_slope();
            if (credit.sign() < 0 && slope.sign() > 0) propose(t + (-credit) / slope);
        }
        if (!upcoming) break;

        if (cbs) {
            auto& segs = trajectory.segments;
            if (!segs.empty() && segs.back().end == t && segs.back().slope == slope && segs.back().end_value() == credit) {
                segs.back().end = *upcoming;
            } else {
                segs.push_back({t, *upcoming, slope, credit});
            }
            credit += slope * (*upcoming - t);
        }
        t = *upcoming;
    }

    SimResult result;
    result.busy_periods = std::move(busy);
    for (std::size_t q = 0; q < nq; ++q) {
        std::vector<Packet> out;
        out.reserve(arrivals[q].size());
        for (std::size_t n = 1; n <= arrivals[q].size(); ++n) out.push_back({departure[q][n - 1], arrivals[q].length(n)});
        QueueRun run{arrivals[q], PacketTrace(std::move(out)), std::move(start[q]), {}};
        if (cbs && q == *cbs) {
            for (std::size_t n = 1; n <= run.output.size(); ++n)
                run.recovery.push_back(trajectory.first_nonnegative(run.output.time(n)));
        }
        result.queues.push_back(std::move(run));
    }
    if (cbs) result.credit = std::move(trajectory);
    return result;
}

// ---------------------------------------------------------------------------
// Adversarial search

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// The whole bucket as one batch at `offset` (equal packets when the lengths
// allow it), then greedy maximal packets.
PacketTrace burst_trace(const FlowSpec& f, const Rational& horizon, const Rational& offset) {
    std::vector<Packet> out;
    const Rational n = f.sigma / f.l_max;
    const std::int64_t floor_n = mpz_class(n.raw().get_num() / n.raw().get_den()).get_si();
    std::int64_t count = n.is_integer() ? floor_n : floor_n + 1;
    Rational used = 0;
    if (Rational(count) * f.l_min <= f.sigma) {
        const Rational size = f.sigma / Rational(count);
        for (std::int64_t k = 0; k < count; ++k) out.push_back({offset, size});
        used = f.sigma;
    } else {
        count = floor_n;
        for (std::int64_t k = 0; k < count; ++k) out.push_back({offset, f.l_max});
        used = f.l_max * Rational(count);
    }
    if (f.rho.sign() > 0) {
        Rational tokens = f.sigma - used;
        Rational t = offset;
        while (true) {
            t += (f.l_max - tokens) / f.rho;
            if (t >= offset + horizon) break;
            out.push_back({t, f.l_max});
            tokens = 0;
        }
    }
    PacketTrace trace(std::move(out));
    verify_bucket(trace, f);
    return trace;
}

Rational queue_max_delay(const SimResult& run, int priority) {
    const QueueRun& q = run.queues.at(static_cast<std::size_t>(priority - 1));
    Rational worst = 0;
    for (std::size_t n = 1; n <= q.input.size(); ++n) worst = max(worst, q.output.time(n) - q.input.time(n));
    return worst;
}

}  // namespace

Rational scenario_horizon(const PortConfig& cfg) {
    Rational sigma_total = 0;
    Rational refill = 0;
    for (const auto& q : cfg.queues) {
        sigma_total += q.flow.sigma;
        if (q.flow.rho.sign() > 0) refill = max(refill, q.flow.l_max / q.flow.rho);
    }
    return sigma_total * Rational(3) / cfg.link_rate + refill * Rational(2);
}

Scenario random_scenario(const PortConfig& cfg, std::uint64_t seed, std::size_t trial,
                         const std::optional<Rational>& span) {
    const Rational horizon = span ? *span : scenario_horizon(cfg);
    Scenario sc;
    sc.label = "random trial " + std::to_string(trial) + " (seed " + std::to_string(seed) + ")";
    for (std::size_t k = 0; k < cfg.queues.size(); ++k) {
        const std::uint64_t s = splitmix(splitmix(seed ^ splitmix(trial)) + k);
        sc.arrivals.push_back(generate_traffic(SeededRandomConforming{cfg.queues[k].flow, s, horizon}, horizon));
    }
    return sc;
}

AdversarialResult adversarial_max_delay(const PortConfig& cfg, int priority, std::size_t budget, std::uint64_t seed) {
    cfg.validate();
    cfg.queue(priority);
    const Rational horizon = scenario_horizon(cfg);
    const std::size_t nq = cfg.queues.size();
    const std::size_t self = static_cast<std::size_t>(priority - 1);

    AdversarialResult best;
    bool have = false;
    auto evaluate = [&](Scenario sc) {
        const Rational d = queue_max_delay(simulate_port(cfg, sc.arrivals), priority);
        ++best.scenarios_run;
        if (!have || d > best.max_delay) {
            best.max_delay = d;
            best.witness = std::move(sc);
            have = true;
        }
    };

    {
        Scenario sc{"aligned full bursts at t = 0", {}};
        for (const auto& q : cfg.queues) sc.arrivals.push_back(burst_trace(q.flow, horizon, 0));
        evaluate(std::move(sc));
    }
    {
        Scenario sc{"burst of the analyzed queue alone", std::vector<PacketTrace>(nq)};
        sc.arrivals[self] = burst_trace(cfg.queues[self].flow, horizon, 0);
        evaluate(std::move(sc));
    }
    std::optional<std::size_t> blocker;
    for (std::size_t k = self + 1; k < nq; ++k)
        if (!blocker || cfg.queues[k].flow.l_max > cfg.queues[*blocker].flow.l_max) blocker = k;
    if (blocker) {
        const Rational l = cfg.queues[*blocker].flow.l_max;
        const Rational delta = l / cfg.link_rate / Rational(1024);
        Scenario sc{"maximal lower-priority packet just ahead of aligned bursts", std::vector<PacketTrace>(nq)};
        sc.arrivals[*blocker] = PacketTrace({{0, l}});
        for (std::size_t k = 0; k <= self; ++k) sc.arrivals[k] = burst_trace(cfg.queues[k].flow, horizon, delta);
        evaluate(std::move(sc));
    }
    for (std::size_t trial = 0; trial < budget; ++trial) evaluate(random_scenario(cfg, seed, trial));
    return best;
}

// ---------------------------------------------------------------------------
// Packetization counterexamples

std::string to_string(CounterexampleKind kind) {
    switch (kind) {
        case CounterexampleKind::link_arrival: return "link_arrival";
        case CounterexampleKind::link_service: return "link_service";
        case CounterexampleKind::sp_service: return "sp_service";
        case CounterexampleKind::cbs_service: return "cbs_service";
    }
    return "unknown";
}

std::optional<CounterexampleKind> counterexample_kind(const std::string& name) {
    for (auto k : {CounterexampleKind::link_arrival, CounterexampleKind::link_service, CounterexampleKind::sp_service,
                   CounterexampleKind::cbs_service})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

CheckResult Counterexample::check(const Curve& curve) const {
    if (service_role) return check_service_curve(input(), output(), curve);
    return check_arrival_curve(input(), curve);
}

Counterexample build_counterexample(CounterexampleKind kind) {
    const Rational c = 100;
    const Rational l = 100;
    const FlowSpec one_packet{l, 0, l, l};
    Counterexample cx;
    cx.kind = kind;
    switch (kind) {
        case CounterexampleKind::link_arrival:
        case CounterexampleKind::link_service: {
            cx.port = PortConfig{c, {QueueConfig{1, Selection::sp, 0, false, one_packet}}};
            cx.run = simulate_port(cx.port, {PacketTrace({{5, l}})});
            cx.refuted = Curve::affine(c, 0);
            if (kind == CounterexampleKind::link_arrival) {
                cx.description = "one packet of 100 bits arriving at t = 5 on a 100 bit/s link; c*t as arrival curve";
                cx.repaired = Curve::token_bucket(l, c);
            } else {
                cx.service_role = true;
                cx.description = "one packet of 100 bits arriving at t = 5 on a 100 bit/s link; c*t as service curve";
                cx.repaired = Curve::latency_rate(c, l / c);
            }
            break;
        }
        case CounterexampleKind::sp_service: {
            cx.service_role = true;
            cx.description =
                "strict priority: a 100-bit lower-priority packet starts at t = 0, a 100-bit top-priority packet "
                "arrives at t = 1/2; c(t - lMl/c)^+ as service curve of the top queue";
            cx.port = PortConfig{c, {QueueConfig{1, Selection::sp, 0, false, one_packet},
                                     QueueConfig{2, Selection::sp, 0, false, one_packet}}};
            cx.run = simulate_port(cx.port, {PacketTrace({{Rational(1, 2), l}}), PacketTrace({{0, l}})});
            cx.refuted = Curve::latency_rate(c, l / c);
            cx.repaired = analyze_sp(cx.port, 1).service_curve;
            break;
        }
        case CounterexampleKind::cbs_service: {
            cx.service_role = true;
            const Rational idle = 50;
            cx.description = "CBS with idleSlope 50 on a 100 bit/s link, one 100-bit packet at t = 0; idleSlope*t as "
                             "service curve";
            cx.port = PortConfig{c, {QueueConfig{1, Selection::cbs, idle, false, one_packet}}};
            cx.run = simulate_port(cx.port, {PacketTrace({{0, l}})});
            cx.refuted = Curve::affine(idle, 0);
            cx.repaired = analyze_cbs_top(cx.port).service_curve;
            break;
        }
    }
    return cx;
}

}  // namespace tsncalc
