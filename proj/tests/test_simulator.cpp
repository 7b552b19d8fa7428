#include "support.hpp"

#include "tsncalc/simulator.hpp"

#include <doctest.h>

using namespace tsncalc;
using testsupport::q;

namespace {

QueueConfig sp(int p, FlowSpec f) { return QueueConfig{p, Selection::sp, 0, false, f}; }
QueueConfig cbs(int p, Rational idle, bool frozen, FlowSpec f) {
    return QueueConfig{p, Selection::cbs, idle, frozen, f};
}

const FlowSpec wide{100000, 0, 1, 1000};

Rational credit_after(const CreditTrajectory& tr, const Rational& t) {
    const bool reset = std::find(tr.resets.begin(), tr.resets.end(), t) != tr.resets.end();
    return reset ? Rational(0) : tr.value_before(t);
}

void check_credit_shape(const PortConfig& cfg, const SimResult& res) {
    REQUIRE(res.credit);
    const auto p = *cfg.cbs_priority();
    const Rational I = cfg.queue(p).idle_slope, S = I - cfg.link_rate;
    const auto& segs = res.credit->segments;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const auto& s = segs[k];
        CHECK(s.start < s.end);
        CHECK((s.slope == I || s.slope == S || s.slope == 0));
        if (k == 0) {
            CHECK(s.start == 0);
            CHECK(s.start_value == 0);
        } else {
            CHECK(s.start == segs[k - 1].end);
            const bool reset = std::find(res.credit->resets.begin(), res.credit->resets.end(), s.start) !=
                               res.credit->resets.end();
            if (reset) {
                CHECK(segs[k - 1].end_value() > 0);
                CHECK(s.start_value == 0);
            } else {
                CHECK(s.start_value == segs[k - 1].end_value());
            }
        }
    }
    // the send slope is used exactly while the CBS queue transmits
    const QueueRun& run = res.queues[static_cast<std::size_t>(p - 1)];
    for (const auto& s : segs) {
        Rational covered = 0;
        for (std::size_t n = 0; n < run.start.size(); ++n)
            covered += positive_part(min(s.end, run.output.time(n + 1)) - max(s.start, run.start[n]));
        CHECK(covered == (s.slope == S ? s.end - s.start : Rational(0)));
    }
    // packets start only with nonnegative credit
    for (const auto& e : run.start) CHECK(res.credit->value_before(e) >= 0);
}

void check_schedule(const PortConfig& cfg, const SimResult& res) {
    struct Tx {
        Rational start, end;
    };
    std::vector<Tx> all;
    for (std::size_t k = 0; k < res.queues.size(); ++k) {
        const QueueRun& run = res.queues[k];
        REQUIRE(run.start.size() == run.input.size());
        for (std::size_t n = 1; n <= run.input.size(); ++n) {
            CHECK(run.output.length(n) == run.input.length(n));
            CHECK(run.output.time(n) - run.start[n - 1] == run.input.length(n) / cfg.link_rate);
            CHECK(run.start[n - 1] >= run.input.time(n));
            if (n > 1) CHECK(run.start[n - 1] >= run.output.time(n - 1));
            all.push_back({run.start[n - 1], run.output.time(n)});
        }
    }
    std::sort(all.begin(), all.end(), [](const Tx& a, const Tx& b) { return a.start < b.start; });
    for (std::size_t k = 1; k < all.size(); ++k) CHECK(all[k].start >= all[k - 1].end);
    Rational busy = 0;
    for (const auto& b : res.busy_periods) busy += b.end - b.start;
    Rational tx = 0;
    for (const auto& t : all) tx += t.end - t.start;
    CHECK(busy == tx);
}

std::vector<Rational> cbs_closed_form(const PacketTrace& in, const Rational& I, const Rational& c) {
    std::vector<Rational> out;
    for (std::size_t n = 1; n <= in.size(); ++n) {
        Rational best = in.cumulative_length(0, n) / I;
        for (std::size_t m = 1; m <= n; ++m) best = max(best, in.time(m) + in.cumulative_length(m, n) / I);
        out.push_back(best + in.length(n) / c);
    }
    return out;
}

}  // namespace

TEST_CASE("traffic generators") {
    const PacketTrace greedy = generate_traffic(GreedyTokenBucket{FlowSpec{300, 10, 100, 100}, 100}, 35);
    REQUIRE(greedy.size() == 6);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(greedy.time(n) == 0);
    CHECK(greedy.time(4) == 10);
    CHECK(greedy.time(5) == 20);
    CHECK(greedy.time(6) == 30);
    CHECK(generate_traffic(GreedyTokenBucket{FlowSpec{300, 10, 100, 100}, 100}, 0).empty());
    CHECK_THROWS_AS(generate_traffic(GreedyTokenBucket{FlowSpec{300, 10, 100, 400}, 400}, 10), ParameterError);

    const PacketTrace lrq = generate_traffic(LrqRegulated{100, {100, 100, 50}}, 100);
    REQUIRE(lrq.size() == 3);
    CHECK(lrq.time(2) - lrq.time(1) == 1);
    CHECK(lrq.time(3) - lrq.time(2) == 1);
    CHECK_FALSE(check_g_regular(lrq, Curve::affine(q(1, 100), 0)));

    const FlowSpec f{400, 25, 20, 100};
    const PacketTrace a = generate_traffic(SeededRandomConforming{f, 7, 60}, 60);
    CHECK(a == generate_traffic(SeededRandomConforming{f, 7, 60}, 60));
    CHECK_FALSE(check_arrival_curve(a, f.arrival_curve()));
    for (const auto& p : a.packets()) {
        CHECK(p.length >= f.l_min);
        CHECK(p.length <= f.l_max);
        CHECK(p.time < 60);
    }
}

TEST_CASE("standalone CBS single packet") {
    const PortConfig cfg{100, {cbs(1, 50, false, wide)}};
    const SimResult r = simulate_port(cfg, {PacketTrace({{0, 100}})});
    const QueueRun& run = r.queues[0];
    CHECK(run.output.time(1) == 1);
    CHECK(run.start[0] == 0);
    REQUIRE(run.recovery.size() == 1);
    CHECK(run.recovery[0] - run.start[0] == 2);
    REQUIRE(r.credit);
    CHECK(r.credit->value_before(1) == -50);
    CHECK(r.credit->value_before(q(3, 2)) == -25);
    CHECK(r.credit->value_before(2) == 0);
    CHECK(r.credit->value_before(3) == 0);
    CHECK(r.credit->first_nonnegative(1) == 2);
    check_credit_shape(cfg, r);
}

TEST_CASE("empty arrivals") {
    const PortConfig cfg{100, {cbs(1, 50, false, wide), sp(2, wide)}};
    const SimResult r = simulate_port(cfg, {PacketTrace(), PacketTrace()});
    CHECK(r.queues[0].output.empty());
    CHECK(r.queues[1].output.empty());
    CHECK(r.busy_periods.empty());
    REQUIRE(r.credit);
    for (const auto& s : r.credit->segments) {
        CHECK(s.slope == 0);
        CHECK(s.start_value == 0);
    }
    CHECK(r.credit->value_before(10) == 0);
}

TEST_CASE("non-preemption") {
    // the top packet arrives just after a maximal lower packet starts
    const PortConfig cfg{100, {sp(1, wide), sp(2, wide)}};
    const SimResult r = simulate_port(cfg, {PacketTrace({{q(1, 100), 100}}), PacketTrace({{0, 500}})});
    CHECK(r.queues[1].output.time(1) == 5);
    CHECK(r.queues[0].start[0] == 5);
    CHECK(r.queues[0].output.time(1) == 6);
    check_schedule(cfg, r);

    // ties go to the higher priority
    const SimResult t = simulate_port(cfg, {PacketTrace({{0, 100}}), PacketTrace({{0, 500}})});
    CHECK(t.queues[0].output.time(1) == 1);
    CHECK(t.queues[1].output.time(1) == 6);
}

TEST_CASE("simultaneous arrivals keep input order") {
    const PortConfig cfg{100, {sp(1, wide)}};
    const SimResult r = simulate_port(cfg, {PacketTrace({{0, 100}, {0, 200}, {0, 50}})});
    CHECK(r.queues[0].output.time(1) == 1);
    CHECK(r.queues[0].output.time(2) == 3);
    CHECK(r.queues[0].output.time(3) == q(7, 2));
}

TEST_CASE("standalone CBS matches the exact model") {
    Rng rng(61);
    for (int k = 0; k < 60; ++k) {
        const Rational c = rng.uniform_rational(50, 200, 1);
        const Rational I = c * rng.uniform_rational(1, 15, 1) / 16;
        const FlowSpec f{rng.uniform_rational(200, 800, 1), I * rng.uniform_rational(0, 1, 4), 20, 100};
        const PortConfig cfg{c, {cbs(1, I, false, f)}};
        const PacketTrace in = generate_traffic(SeededRandomConforming{f, 100 + static_cast<std::uint64_t>(k), 40}, 40);
        const SimResult r = simulate_port(cfg, {in});
        const QueueRun& run = r.queues[0];
        const auto expect = cbs_closed_form(in, I, c);
        for (std::size_t n = 1; n <= in.size(); ++n) {
            CHECK(run.output.time(n) == expect[n - 1]);
            CHECK(run.recovery[n - 1] - run.start[n - 1] == in.length(n) / I);
        }
        CHECK_FALSE(check_gx_server(in, run.output, analyze_cbs_standalone(c, I, f).gx_models[0]));
        check_credit_shape(cfg, r);
        check_schedule(cfg, r);
    }
}

TEST_CASE("credit dynamics with other queues") {
    Rng rng(62);
    for (int k = 0; k < 40; ++k) {
        const bool frozen = k % 2 == 0;
        const Rational c = 100;
        const FlowSpec hi{150, 10, 20, 80}, mid{300, 20, 20, 100}, lo{200, 10, 50, 120};
        const PortConfig cfg = frozen ? PortConfig{c, {sp(1, hi), cbs(2, 40, true, mid), sp(3, lo)}}
                                      : PortConfig{c, {cbs(1, 40, false, mid), sp(2, lo)}};
        const Scenario sc = random_scenario(cfg, 9, static_cast<std::size_t>(k));
        const SimResult r = simulate_port(cfg, sc.arrivals);
        check_schedule(cfg, r);
        check_credit_shape(cfg, r);
        CHECK(simulate_port(cfg, sc.arrivals) == r);

        const int p = *cfg.cbs_priority();
        const QueueRun& run = r.queues[static_cast<std::size_t>(p - 1)];
        if (!frozen) {
            // credit at a departure stays below I l_max_lower/c + S l(n)/c
            const Rational I = 40, S = I - c;
            for (std::size_t n = 1; n <= run.output.size(); ++n)
                CHECK(r.credit->value_before(run.output.time(n)) <=
                      I * 120 / c + S * run.output.length(n) / c);
        } else {
            // no credit change while the higher queue transmits
            const QueueRun& top = r.queues[0];
            for (std::size_t n = 1; n <= top.output.size(); ++n)
                CHECK(r.credit->value_before(top.output.time(n)) == credit_after(*r.credit, top.start[n - 1]));
        }
        const ExtendedValue bound = analyze_queue(cfg, p).delay_bound;
        CHECK(ExtendedValue(delay_stats(run.input, run.output).max_packet_delay) <= bound);
    }
}

TEST_CASE("adversarial search") {
    const Rational c = 100;
    const FlowSpec f{300, 10, 100, 100};
    const PortConfig link{c, {sp(1, f)}};
    const AdversarialResult a = adversarial_max_delay(link, 1, 5, 3);
    CHECK(a.max_delay == f.sigma / c);
    CHECK(ExtendedValue(a.max_delay) == analyze_sp(link, 1).delay_bound);
    const AdversarialResult b = adversarial_max_delay(link, 1, 5, 3);
    CHECK(b.witness == a.witness);
    CHECK(b.scenarios_run == a.scenarios_run);
    CHECK(a.scenarios_run >= 5);

    const PortConfig sp2{c, {sp(1, {200, 20, 10, 50}), sp(2, {300, 30, 10, 50}), sp(3, {100, 10, 20, 50})}};
    const AdversarialResult s = adversarial_max_delay(sp2, 2, 10, 4);
    CHECK(ExtendedValue(s.max_delay) <= analyze_sp(sp2, 2).delay_bound);
    CHECK(s.max_delay > 0);
}

TEST_CASE("counterexample fixtures") {
    for (const auto kind : {CounterexampleKind::link_arrival, CounterexampleKind::link_service,
                            CounterexampleKind::sp_service, CounterexampleKind::cbs_service}) {
        const Counterexample cx = build_counterexample(kind);
        const CheckResult refuted = cx.check(cx.refuted);
        REQUIRE(refuted);
        CHECK(refuted->lhs != refuted->rhs);
        CHECK_FALSE(cx.check(cx.repaired));
        CHECK(counterexample_kind(to_string(kind)) == kind);
        if (cx.service_role) {
            const Rational a = cx.input().time(1), d = cx.output().time(1);
            CHECK(a < *refuted->t);
            CHECK(*refuted->t < d);
        }
    }
    CHECK_FALSE(counterexample_kind("nope"));
    const Counterexample cbsx = build_counterexample(CounterexampleKind::cbs_service);
    CHECK(cbsx.repaired == Curve::latency_rate(50, 1));
    const Counterexample spx = build_counterexample(CounterexampleKind::sp_service);
    CHECK(spx.check(Curve::latency_rate(100, 1)));
}
