#include "tsncalc/tsn_port.hpp"

#include <string>

namespace tsncalc {

namespace {

std::string field(std::size_t k, const char* name) { return "queues[" + std::to_string(k) + "]." + name; }

Curve rate_curve(const Rational& rate) { return Curve::affine(Rational(1) / rate, 0); }

// Service curve of the g-server obtained from a g^x model with l_max.
Curve service_of(const GxServer& model, const Rational& l_max) {
    return g_server_to_service(relax_to_g_server(model, l_max).g);
}

void require_residual(const Rational& c, const QueueContext& ctx) {
    if (ctx.rho_u >= c)
        throw UtilizationError("higher-priority rate rho_u = " + ctx.rho_u.str() + " leaves no capacity on a link of rate " +
                               c.str());
}

// The SP results count higher-priority traffic by its arrival curve, which a
// shaped CBS queue above does not respect on its output.
void require_no_shaper_above(const PortConfig& cfg, int priority) {
    for (const auto& q : cfg.queues)
        if (q.priority < priority && q.selection == Selection::cbs)
            throw ConfigError(field(static_cast<std::size_t>(priority - 1), "selection") +
                              ": an SP queue below a CBS queue is not covered by the SP analysis");
}

}  // namespace

void PortConfig::validate() const {
    if (link_rate.sign() <= 0) throw ConfigError("linkRate: must be positive");
    if (queues.empty()) throw ConfigError("queues: at least one queue is required");
    int cbs = 0;
    for (std::size_t k = 0; k < queues.size(); ++k) {
        const auto& q = queues[k];
        if (q.priority != static_cast<int>(k) + 1)
            throw ConfigError(field(k, "priority") + ": priorities must be unique and contiguous from 1");
        try {
            q.flow.validate();
        } catch (const ParameterError& e) {
            throw ConfigError(field(k, "flow") + ": " + e.what());
        }
        if (q.selection == Selection::cbs) {
            if (++cbs > 1) throw ConfigError(field(k, "selection") + ": at most one CBS queue per port");
            if (q.idle_slope.sign() <= 0 || q.idle_slope >= link_rate)
                throw ConfigError(field(k, "idleSlope") + ": must satisfy 0 < idleSlope < linkRate");
        } else if (q.frozen_by_higher) {
            throw ConfigError(field(k, "frozenByHigher") + ": applies to CBS queues only");
        }
    }
}

const QueueConfig& PortConfig::queue(int priority) const {
    if (priority < 1 || priority > static_cast<int>(queues.size()))
        throw ConfigError("no queue with priority " + std::to_string(priority));
    return queues[static_cast<std::size_t>(priority - 1)];
}

std::optional<int> PortConfig::cbs_priority() const {
    for (const auto& q : queues)
        if (q.selection == Selection::cbs) return q.priority;
    return std::nullopt;
}

QueueContext QueueContext::of(const PortConfig& cfg, int priority) {
    const QueueConfig& self = cfg.queue(priority);
    QueueContext ctx;
    ctx.l_min_self = self.flow.l_min;
    ctx.l_max_self = self.flow.l_max;
    bool have_upper = false;
    for (const auto& q : cfg.queues) {
        ctx.l_max_all = max(ctx.l_max_all, q.flow.l_max);
        if (q.priority < priority) {
            ctx.rho_u += q.flow.rho;
            ctx.sigma_u += q.flow.sigma;
            ctx.l_min_upper = have_upper ? min(ctx.l_min_upper, q.flow.l_min) : q.flow.l_min;
            have_upper = true;
        } else if (q.priority > priority) {
            ctx.l_max_lower = max(ctx.l_max_lower, q.flow.l_max);
        }
    }
    return ctx;
}

AnalyzerResult analyze_sp(const Rational& c, const FlowSpec& flow, const QueueContext& ctx) {
    flow.validate();
    require_residual(c, ctx);
    const Rational r = c - ctx.rho_u;
    const Rational e = (ctx.sigma_u + ctx.l_max_lower) / r - flow.l_min / r + flow.l_min / c;
    AnalyzerResult res;
    res.gx_models.push_back(make_gx_server(Rational(1) / r, e, rate_curve(r)));
    res.service_curve = service_of(res.gx_models.back(), flow.l_max);
    res.delay_bound = bound_integrated(flow.arrival_curve(), res.gx_models.back());
    res.constants.rate = r;
    res.constants.latency = e;
    res.constants.service_latency = e + flow.l_max / r;
    return res;
}

AnalyzerResult analyze_sp(const PortConfig& cfg, int priority) {
    cfg.validate();
    const QueueConfig& q = cfg.queue(priority);
    if (q.selection != Selection::sp) throw ConfigError("queue " + std::to_string(priority) + " is not an SP queue");
    require_no_shaper_above(cfg, priority);
    return analyze_sp(cfg.link_rate, q.flow, QueueContext::of(cfg, priority));
}

namespace {

// Shared shape of the three CBS results: g1 = v/R + k with x1 = v/c,
// g2 = v/R + e2 with x2 = v/R.
AnalyzerResult cbs_result(const Rational& c, const Rational& idle_slope, const Rational& rate, const Rational& k,
                          bool exact, const FlowSpec& flow, const Rational& l_max_lower) {
    const Rational e2 = k - (Rational(1) / rate - Rational(1) / c) * flow.l_min;
    AnalyzerResult res;
    res.gx_models.push_back(make_gx_server(Rational(1) / rate, k, rate_curve(c), exact));
    res.gx_models.push_back(make_gx_server(Rational(1) / rate, e2, rate_curve(rate)));
    res.service_curve = service_of(res.gx_models.front(), flow.l_max);
    res.delay_bound = bound_integrated(flow.arrival_curve(), res.gx_models.back());
    res.constants.rate = rate;
    res.constants.latency = e2;
    res.constants.service_latency = k + flow.l_max / c;
    res.constants.credit_max = idle_slope * l_max_lower / c + (idle_slope - c) * flow.l_min / c;
    return res;
}

void require_idle_slope(const Rational& c, const Rational& idle_slope) {
    if (c.sign() <= 0) throw ParameterError("link rate must be positive");
    if (idle_slope.sign() <= 0 || idle_slope > c) throw ParameterError("idleSlope must satisfy 0 < idleSlope <= c");
}

const QueueConfig& cbs_queue(const PortConfig& cfg) {
    cfg.validate();
    const auto p = cfg.cbs_priority();
    if (!p) throw ConfigError("queues: no CBS queue in the port");
    return cfg.queue(*p);
}

}  // namespace

AnalyzerResult analyze_cbs_standalone(const Rational& c, const Rational& idle_slope, const FlowSpec& flow) {
    require_idle_slope(c, idle_slope);
    flow.validate();
    return cbs_result(c, idle_slope, idle_slope, 0, true, flow, 0);
}

AnalyzerResult analyze_cbs_top(const Rational& c, const Rational& idle_slope, const FlowSpec& flow,
                               const QueueContext& ctx) {
    require_idle_slope(c, idle_slope);
    flow.validate();
    if (ctx.rho_u.sign() != 0 || ctx.sigma_u.sign() != 0)
        throw ConfigError("the CBS queue has higher-priority traffic; it is not at the highest priority");
    return cbs_result(c, idle_slope, idle_slope, ctx.l_max_lower / c, ctx.l_max_lower.sign() == 0, flow,
                      ctx.l_max_lower);
}

AnalyzerResult analyze_cbs_top(const PortConfig& cfg) {
    const QueueConfig& q = cbs_queue(cfg);
    if (q.priority != 1) throw ConfigError(field(static_cast<std::size_t>(q.priority - 1), "priority") +
                                           ": the CBS queue is not at the highest priority");
    return analyze_cbs_top(cfg.link_rate, q.idle_slope, q.flow, QueueContext::of(cfg, q.priority));
}

AnalyzerResult analyze_cbs_frozen(const Rational& c, const Rational& idle_slope, const FlowSpec& flow,
                                  const QueueContext& ctx) {
    require_idle_slope(c, idle_slope);
    flow.validate();
    require_residual(c, ctx);
    const Rational residual = c - ctx.rho_u;
    const Rational rate = idle_slope * residual / c;
    const Rational k = (ctx.sigma_u + ctx.l_max_lower) / residual;
    return cbs_result(c, idle_slope, rate, k, k.sign() == 0, flow, ctx.l_max_lower);
}

AnalyzerResult analyze_cbs_frozen(const PortConfig& cfg) {
    const QueueConfig& q = cbs_queue(cfg);
    if (q.priority > 1 && !q.frozen_by_higher)
        throw ConfigError(field(static_cast<std::size_t>(q.priority - 1), "frozenByHigher") +
                          ": a CBS queue below higher-priority traffic is analyzed only with credit freeze");
    return analyze_cbs_frozen(cfg.link_rate, q.idle_slope, q.flow, QueueContext::of(cfg, q.priority));
}

std::string queue_setting(const PortConfig& cfg, int priority) {
    const QueueConfig& q = cfg.queue(priority);
    if (q.selection == Selection::sp) {
        require_no_shaper_above(cfg, priority);
        return "SP";
    }
    if (priority == 1) return "CBS top";
    if (!q.frozen_by_higher)
        throw ConfigError(field(static_cast<std::size_t>(priority - 1), "frozenByHigher") +
                          ": a CBS queue below higher-priority traffic is analyzed only with credit freeze");
    return "CBS frozen";
}

AnalyzerResult analyze_queue(const PortConfig& cfg, int priority) {
    cfg.validate();
    const std::string setting = queue_setting(cfg, priority);
    if (setting == "SP") return analyze_sp(cfg, priority);
    if (setting == "CBS top") return analyze_cbs_top(cfg);
    return analyze_cbs_frozen(cfg);
}

LiteratureBounds literature_bounds(const PortConfig& cfg, int priority) {
    cfg.validate();
    const QueueConfig& q = cfg.queue(priority);
    if (q.selection != Selection::sp) throw ConfigError("queue " + std::to_string(priority) + " is not an SP queue");
    require_no_shaper_above(cfg, priority);
    const QueueContext ctx = QueueContext::of(cfg, priority);
    const Rational& c = cfg.link_rate;
    require_residual(c, ctx);
    const Rational r = c - ctx.rho_u;
    if (q.flow.rho > r) return {ExtendedValue::infinite(), ExtendedValue::infinite()};
    const Rational base = q.flow.sigma / r + (ctx.sigma_u + ctx.l_max_lower) / r;
    return {base + ctx.l_max_all / c, base + ctx.l_max_all / r};
}

QueueComparison compare_queue(const PortConfig& cfg, int priority) {
    QueueComparison out;
    out.priority = priority;
    out.setting = queue_setting(cfg, priority);
    const AnalyzerResult res = analyze_queue(cfg, priority);
    const FlowSpec& flow = cfg.queue(priority).flow;
    const Curve alpha = flow.arrival_curve();
    const Curve g_server = relax_to_g_server(res.gx_models.front(), flow.l_max).g;
    out.report.min_plus = bound_min_plus(alpha, res.service_curve);
    out.report.max_plus = bound_max_plus(arrival_to_g_regular(alpha, flow.l_min), g_server);
    out.report.mapped = bound_mapped(alpha, res.service_curve, flow.l_min);
    out.report.integrated = res.delay_bound;
    out.report.assumptions = {flow.rho, *res.constants.rate};
    if (out.setting == "SP") out.literature = literature_bounds(cfg, priority);
    return out;
}

}  // namespace tsncalc
