#pragma once

#include "tsncalc/conformance.hpp"
#include "tsncalc/tsn_port.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tsncalc {

// Bucket starts full; every packet of `packet_size` leaves as soon as the
// bucket holds enough tokens.
struct GreedyTokenBucket {
    FlowSpec flow;
    Rational packet_size;
};

// Back-to-back packets spaced exactly l(n)/rate apart, starting at 0.
struct LrqRegulated {
    Rational rate;
    std::vector<Rational> sizes;
};

struct Explicit {
    PacketTrace trace;
};

// Random lengths in [l_min, l_max] and random idle gaps, never exceeding the
// token bucket (which starts full).
struct SeededRandomConforming {
    FlowSpec flow;
    std::uint64_t seed = 0;
    Rational horizon;
};

using TrafficPattern = std::variant<GreedyTokenBucket, LrqRegulated, Explicit, SeededRandomConforming>;

// Packets with time < horizon. The result is checked against the pattern's
// arrival curve or g-regularity before it is returned. Throws ParameterError
// for infeasible patterns.
PacketTrace generate_traffic(const TrafficPattern& pattern, const Rational& horizon);

struct CreditSegment {
    Rational start;
    Rational end;
    Rational slope;
    Rational start_value;

    Rational end_value() const { return start_value + slope * (end - start); }
    friend bool operator==(const CreditSegment&, const CreditSegment&) = default;
};

struct CreditTrajectory {
    std::vector<CreditSegment> segments;  // contiguous, starting at 0
    std::vector<Rational> resets;         // instants where positive credit was set to 0

    // Credit just before t (before any reset at t).
    Rational value_before(const Rational& t) const;
    // First instant >= t at which the credit is >= 0.
    Rational first_nonnegative(const Rational& t) const;

    friend bool operator==(const CreditTrajectory&, const CreditTrajectory&) = default;
};

struct QueueRun {
    PacketTrace input;
    PacketTrace output;
    std::vector<Rational> start;     // e(n): transmission start, d(n) - e(n) = l(n)/c
    std::vector<Rational> recovery;  // e*(n): CBS queue only, first t >= d(n) with credit >= 0

    friend bool operator==(const QueueRun&, const QueueRun&) = default;
};

struct BusyPeriod {
    Rational start;
    Rational end;
    friend bool operator==(const BusyPeriod&, const BusyPeriod&) = default;
};

struct SimResult {
    std::vector<QueueRun> queues;  // by priority - 1
    std::optional<CreditTrajectory> credit;
    std::vector<BusyPeriod> busy_periods;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

// Non-preemptive strict priority over the queues; the CBS queue (if any) is
// eligible while its credit is >= 0. At equal instants departures are handled
// first, then credit resets, then arrivals, then the scheduling decision.
SimResult simulate_port(const PortConfig& cfg, const std::vector<PacketTrace>& arrivals);

struct Scenario {
    std::string label;
    std::vector<PacketTrace> arrivals;  // by priority - 1

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct AdversarialResult {
    Rational max_delay;
    Scenario witness;
    std::size_t scenarios_run = 0;
};

// Horizon used for generated scenario traffic.
Rational scenario_horizon(const PortConfig& cfg);

// Structured candidates (aligned full bursts, a maximal lower-priority packet
// just ahead of the bursts), then `budget` seeded random conforming scenarios.
// Returns the largest delay seen by the queue and the first scenario reaching it.
AdversarialResult adversarial_max_delay(const PortConfig& cfg, int priority, std::size_t budget, std::uint64_t seed);

// Random conforming arrivals for every queue of the port; stream k of the
// trial uses a seed derived from (seed, trial, k). The horizon defaults to
// scenario_horizon(cfg).
Scenario random_scenario(const PortConfig& cfg, std::uint64_t seed, std::size_t trial,
                         const std::optional<Rational>& horizon = std::nullopt);

enum class CounterexampleKind { link_arrival, link_service, sp_service, cbs_service };

struct Counterexample {
    CounterexampleKind kind;
    std::string description;
    bool service_role = false;  // false: the curve is tested as an arrival curve
    PortConfig port;
    SimResult run;
    int priority = 1;  // queue whose traces are checked
    Curve refuted = Curve::zero();
    Curve repaired = Curve::zero();

    const PacketTrace& input() const { return run.queues.at(static_cast<std::size_t>(priority - 1)).input; }
    const PacketTrace& output() const { return run.queues.at(static_cast<std::size_t>(priority - 1)).output; }
    // Runs the checker matching the role against `curve`.
    CheckResult check(const Curve& curve) const;
};

Counterexample build_counterexample(CounterexampleKind kind);

std::string to_string(CounterexampleKind kind);
std::optional<CounterexampleKind> counterexample_kind(const std::string& name);

}  // namespace tsncalc
