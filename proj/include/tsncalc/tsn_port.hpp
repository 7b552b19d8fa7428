#pragma once

#include "tsncalc/bounds.hpp"
#include "tsncalc/models.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsncalc {

class ConfigError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

enum class Selection { sp, cbs };

struct QueueConfig {
    int priority = 1;  // 1 is the highest
    Selection selection = Selection::sp;
    Rational idle_slope;            // CBS only
    bool frozen_by_higher = false;  // CBS only: credit holds during higher-priority transmission
    FlowSpec flow;

    friend bool operator==(const QueueConfig&, const QueueConfig&) = default;
};

struct PortConfig {
    Rational link_rate;
    std::vector<QueueConfig> queues;  // queues[k].priority == k + 1

    // Throws ConfigError naming the field and the violated invariant.
    void validate() const;
    const QueueConfig& queue(int priority) const;
    // Priority of the CBS queue, if any.
    std::optional<int> cbs_priority() const;

    friend bool operator==(const PortConfig&, const PortConfig&) = default;
};

// Aggregates seen by queue i.
struct QueueContext {
    Rational rho_u;        // sum of rho over higher-priority queues
    Rational sigma_u;      // sum of sigma over higher-priority queues
    Rational l_max_lower;  // largest packet of strictly lower-priority queues, 0 if none
    Rational l_min_self;
    Rational l_max_self;
    Rational l_min_upper;  // smallest packet of higher-priority queues, 0 if none
    Rational l_max_all;    // largest packet over all queues

    static QueueContext of(const PortConfig& cfg, int priority);
    friend bool operator==(const QueueContext&, const QueueContext&) = default;
};

struct AnalyzerConstants {
    std::optional<Rational> rate;             // R: c - rho_u, idleSlope, or I(c - rho_u)/c
    std::optional<Rational> latency;          // E of the SP model, or E2 of the CBS models
    std::optional<Rational> service_latency;  // T of the service curve R'(t - T)^+
    std::optional<Rational> credit_max;       // I l_max_lower/c + S l_min/c with S = I - c

    friend bool operator==(const AnalyzerConstants&, const AnalyzerConstants&) = default;
};

struct AnalyzerResult {
    std::vector<GxServer> gx_models;  // the model(s) of the setting; the last one yields the bound
    Curve service_curve = Curve::zero();
    ExtendedValue delay_bound;
    AnalyzerConstants constants;

    friend bool operator==(const AnalyzerResult&, const AnalyzerResult&) = default;
};

// Strict priority queue: g(v) = v/(c - rho_u) + E, x(v) = v/(c - rho_u) with
// E = (sigma_u + l_max_lower)/(c - rho_u) - l_min/(c - rho_u) + l_min/c.
AnalyzerResult analyze_sp(const Rational& c, const FlowSpec& flow, const QueueContext& ctx);
AnalyzerResult analyze_sp(const PortConfig& cfg, int priority);

// CBS with the link to itself: exact g1 = v/I with x = v/c, and
// g2 = v/I + (1/c - 1/I) l_min with x = v/I.
AnalyzerResult analyze_cbs_standalone(const Rational& c, const Rational& idle_slope, const FlowSpec& flow);

// CBS at the highest priority with lower-priority SP traffic.
AnalyzerResult analyze_cbs_top(const Rational& c, const Rational& idle_slope, const FlowSpec& flow,
                               const QueueContext& ctx);
AnalyzerResult analyze_cbs_top(const PortConfig& cfg);

// CBS below higher-priority SP traffic, credit frozen while that traffic is
// transmitted: R = I(c - rho_u)/c.
AnalyzerResult analyze_cbs_frozen(const Rational& c, const Rational& idle_slope, const FlowSpec& flow,
                                  const QueueContext& ctx);
AnalyzerResult analyze_cbs_frozen(const PortConfig& cfg);

// Picks the analyzer that covers the queue's setting.
AnalyzerResult analyze_queue(const PortConfig& cfg, int priority);
// "SP", "CBS top" or "CBS frozen". Throws ConfigError for a CBS queue below
// higher-priority traffic without credit freeze and for an SP queue below the
// CBS queue; neither setting is covered.
std::string queue_setting(const PortConfig& cfg, int priority);

// Earlier bounds for an SP queue: timing analysis (last term l_max_all/c) and
// a service curve that ignores packetization (last term l_max_all/(c - rho_u)).
struct LiteratureBounds {
    ExtendedValue timing_analysis;
    ExtendedValue fluid_service_curve;
};
LiteratureBounds literature_bounds(const PortConfig& cfg, int priority);

// The four approaches for one queue of a port, built from the analyzer's
// models: beta is its service curve, g2 the g-server it relaxes to.
struct QueueComparison {
    int priority = 0;
    std::string setting;
    BoundReport report;
    std::optional<LiteratureBounds> literature;  // SP queues only
};
QueueComparison compare_queue(const PortConfig& cfg, int priority);

}  // namespace tsncalc
