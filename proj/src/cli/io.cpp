#include "tsncalc/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tsncalc {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) { throw FormatError(field + ": " + what); }

const Json& member(const Json& j, const std::string& field, const char* key) {
    if (!j.is_object()) fail(field, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(field + "." + key, "missing");
    return *it;
}

const Json* optional_member(const Json& j, const char* key) {
    const auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

bool bool_from_json(const Json& j, const std::string& field) {
    if (!j.is_boolean()) fail(field, "expected true or false");
    return j.get<bool>();
}

std::string string_from_json(const Json& j, const std::string& field) {
    if (!j.is_string()) fail(field, "expected a string");
    return j.get<std::string>();
}

std::uint64_t seed_from_json(const Json& j, const std::string& field) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        fail(field, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

void reject_unknown(const Json& j, const std::string& field, std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : j.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; }))
            fail(field + "." + k, "unknown field");
    }
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) fail(field, "expected a rational as a \"p/q\" string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(field, e.what());
    }
}

Json to_json(const ExtendedValue& v) { return v.is_infinite() ? Json("inf") : to_json(v.value()); }

ExtendedValue extended_from_json(const Json& j, const std::string& field) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtendedValue::infinite();
    return rational_from_json(j, field);
}

Json to_json(const Curve& c) {
    Json points = Json::array();
    for (const auto& p : c.points())
        points.push_back({{"x", to_json(p.x)}, {"left", to_json(p.left)}, {"value", to_json(p.value)},
                          {"right", to_json(p.right)}});
    Json out{{"points", points}, {"terminalSlope", to_json(c.tail_slope())}, {"valueAtZero", to_json(c.value_at_zero())}};
    if (c.unbounded()) out["unbounded"] = {{"from", to_json(c.unbounded()->from)}, {"inclusive", c.unbounded()->inclusive}};
    return out;
}

Curve curve_from_json(const Json& j, const std::string& field) {
    const Json& pts = member(j, field, "points");
    if (!pts.is_array()) fail(field + ".points", "expected an array");
    std::vector<Breakpoint> points;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::string f = field + ".points[" + std::to_string(k) + "]";
        const Rational right = rational_from_json(member(pts[k], f, "right"), f + ".right");
        const Rational left = pts[k].contains("left") ? rational_from_json(pts[k]["left"], f + ".left") : right;
        const Rational value = pts[k].contains("value") ? rational_from_json(pts[k]["value"], f + ".value") : right;
        points.push_back({rational_from_json(member(pts[k], f, "x"), f + ".x"), left, value, right});
    }
    std::optional<Curve::Unbounded> unbounded;
    if (const Json* u = optional_member(j, "unbounded")) {
        unbounded = Curve::Unbounded{rational_from_json(member(*u, field + ".unbounded", "from"), field + ".unbounded.from"),
                                     u->contains("inclusive") && bool_from_json((*u)["inclusive"], field + ".unbounded.inclusive")};
    }
    try {
        Curve c(points, rational_from_json(member(j, field, "terminalSlope"), field + ".terminalSlope"), unbounded);
        if (const Json* v0 = optional_member(j, "valueAtZero"))
            if (extended_from_json(*v0, field + ".valueAtZero") != c.value_at_zero())
                fail(field + ".valueAtZero", "does not match the points");
        return c;
    } catch (const ParameterError& e) {
        fail(field, e.what());
    }
}

Json to_json(const ServerModel& m) {
    return std::visit(
        [](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ServiceCurve>) {
                return {{"type", "service-curve"}, {"beta", to_json(s.beta)}};
            } else if constexpr (std::is_same_v<T, GServer>) {
                return {{"type", "g-server"}, {"g", to_json(s.g)}};
            } else {
                return {{"type", "gx-server"}, {"g", to_json(s.g)}, {"x", to_json(s.x)},
                        {"exact", s.exact}, {"offset", to_json(s.offset)}};
            }
        },
        m);
}

ServerModel server_model_from_json(const Json& j, const std::string& field) {
    const std::string type = string_from_json(member(j, field, "type"), field + ".type");
    if (type == "service-curve") return ServiceCurve{curve_from_json(member(j, field, "beta"), field + ".beta")};
    if (type == "g-server") return GServer{curve_from_json(member(j, field, "g"), field + ".g")};
    if (type == "gx-server") {
        GxServer m{curve_from_json(member(j, field, "g"), field + ".g"),
                   curve_from_json(member(j, field, "x"), field + ".x"), false, 0};
        if (const Json* e = optional_member(j, "exact")) m.exact = bool_from_json(*e, field + ".exact");
        if (const Json* o = optional_member(j, "offset")) m.offset = rational_from_json(*o, field + ".offset");
        if (m.offset > 0) fail(field + ".offset", "must be <= 0");
        return m;
    }
    fail(field + ".type", "unknown server model \"" + type + "\"");
}

Json to_json(const TrafficModel& m) {
    if (const auto* a = std::get_if<ArrivalCurve>(&m)) return {{"type", "arrival-curve"}, {"alpha", to_json(a->alpha)}};
    return {{"type", "g-regular"}, {"g", to_json(std::get<GRegular>(m).g)}};
}

TrafficModel traffic_model_from_json(const Json& j, const std::string& field) {
    const std::string type = string_from_json(member(j, field, "type"), field + ".type");
    if (type == "arrival-curve") return ArrivalCurve{curve_from_json(member(j, field, "alpha"), field + ".alpha")};
    if (type == "g-regular") return GRegular{curve_from_json(member(j, field, "g"), field + ".g")};
    fail(field + ".type", "unknown traffic model \"" + type + "\"");
}

Json to_json(const FlowSpec& f) {
    return {{"sigma", to_json(f.sigma)}, {"rho", to_json(f.rho)}, {"lMin", to_json(f.l_min)}, {"lMax", to_json(f.l_max)}};
}

Json to_json(const PreconditionWitness& w) {
    return {{"v", to_json(w.v)}, {"w", to_json(w.w)}, {"lhs", to_json(w.lhs)}, {"rhs", to_json(w.rhs)}};
}

Json to_json(const Violation& v) {
    Json out{{"definition", v.definition}};
    if (v.s) out["s"] = to_json(*v.s);
    if (v.t) out["t"] = to_json(*v.t);
    if (v.m) out["m"] = *v.m;
    if (v.n) out["n"] = *v.n;
    out["lhs"] = to_json(v.lhs);
    out["rhs"] = to_json(v.rhs);
    out["description"] = v.describe();
    return out;
}

Json to_json(const AnalyzerResult& r) {
    Json models = Json::array();
    for (const auto& m : r.gx_models) models.push_back(to_json(ServerModel(m)));
    Json constants = Json::object();
    if (r.constants.rate) constants["rate"] = to_json(*r.constants.rate);
    if (r.constants.latency) constants["latency"] = to_json(*r.constants.latency);
    if (r.constants.service_latency) constants["serviceLatency"] = to_json(*r.constants.service_latency);
    if (r.constants.credit_max) constants["creditMax"] = to_json(*r.constants.credit_max);
    return {{"gxModels", models}, {"serviceCurve", to_json(r.service_curve)}, {"delayBound", to_json(r.delay_bound)},
            {"constants", constants}};
}

Json to_json(const BoundReport& r) {
    return {{"minPlus", to_json(r.min_plus)},
            {"maxPlus", to_json(r.max_plus)},
            {"mapped", to_json(r.mapped)},
            {"integrated", to_json(r.integrated)},
            {"assumptions",
             {{"arrivalRate", to_json(r.assumptions.arrival_rate)},
              {"serviceRate", to_json(r.assumptions.service_rate)},
              {"stable", r.assumptions.stable()}}}};
}

Json to_json(const LiteratureBounds& b) {
    return {{"timingAnalysis", to_json(b.timing_analysis)}, {"fluidServiceCurve", to_json(b.fluid_service_curve)}};
}

Json to_json(const QueueComparison& c) {
    Json out{{"priority", c.priority}, {"setting", c.setting}, {"bounds", to_json(c.report)}};
    if (c.literature) out["literature"] = to_json(*c.literature);
    return out;
}

TrafficPattern TrafficSpec::pattern(const FlowSpec& flow, const Rational& horizon) const {
    switch (kind) {
        case Kind::greedy: return GreedyTokenBucket{flow, packet_size};
        case Kind::lrq: return LrqRegulated{rate, sizes};
        case Kind::explicit_trace: return Explicit{trace};
        case Kind::random: break;
    }
    return SeededRandomConforming{flow, seed, horizon};
}

namespace {

Json to_json(const TrafficSpec& t) {
    switch (t.kind) {
        case TrafficSpec::Kind::greedy: return {{"type", "greedy"}, {"packetSize", to_json(t.packet_size)}};
        case TrafficSpec::Kind::lrq: {
            Json sizes = Json::array();
            for (const auto& s : t.sizes) sizes.push_back(to_json(s));
            return {{"type", "lrq"}, {"rate", to_json(t.rate)}, {"sizes", sizes}};
        }
        case TrafficSpec::Kind::explicit_trace: {
            Json packets = Json::array();
            for (const auto& p : t.trace.packets()) packets.push_back({{"time", to_json(p.time)}, {"length", to_json(p.length)}});
            return {{"type", "explicit"}, {"packets", packets}};
        }
        case TrafficSpec::Kind::random: break;
    }
    return {{"type", "random"}, {"seed", t.seed}};
}

TrafficSpec traffic_from_json(const Json& j, const std::string& field) {
    TrafficSpec t;
    const std::string type = string_from_json(member(j, field, "type"), field + ".type");
    if (type == "greedy") {
        reject_unknown(j, field, {"type", "packetSize"});
        t.kind = TrafficSpec::Kind::greedy;
        t.packet_size = rational_from_json(member(j, field, "packetSize"), field + ".packetSize");
    } else if (type == "lrq") {
        reject_unknown(j, field, {"type", "rate", "sizes"});
        t.kind = TrafficSpec::Kind::lrq;
        t.rate = rational_from_json(member(j, field, "rate"), field + ".rate");
        const Json& sizes = member(j, field, "sizes");
        if (!sizes.is_array()) fail(field + ".sizes", "expected an array");
        for (std::size_t k = 0; k < sizes.size(); ++k)
            t.sizes.push_back(rational_from_json(sizes[k], field + ".sizes[" + std::to_string(k) + "]"));
    } else if (type == "explicit") {
        reject_unknown(j, field, {"type", "packets"});
        t.kind = TrafficSpec::Kind::explicit_trace;
        const Json& packets = member(j, field, "packets");
        if (!packets.is_array()) fail(field + ".packets", "expected an array");
        std::vector<Packet> pk;
        for (std::size_t k = 0; k < packets.size(); ++k) {
            const std::string f = field + ".packets[" + std::to_string(k) + "]";
            pk.push_back({rational_from_json(member(packets[k], f, "time"), f + ".time"),
                          rational_from_json(member(packets[k], f, "length"), f + ".length")});
        }
        try {
            t.trace = PacketTrace(std::move(pk));
        } catch (const TraceError& e) {
            fail(field + ".packets", e.what());
        }
    } else if (type == "random") {
        reject_unknown(j, field, {"type", "seed"});
        t.kind = TrafficSpec::Kind::random;
        if (const Json* s = optional_member(j, "seed")) t.seed = seed_from_json(*s, field + ".seed");
    } else {
        fail(field + ".type", "unknown traffic type \"" + type + "\"");
    }
    return t;
}

}  // namespace

RunConfig parse_config(std::string_view bytes) {
    Json doc;
    try {
        doc = Json::parse(bytes.begin(), bytes.end());
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) fail("config", "expected an object");
    reject_unknown(doc, "config", {"linkRate", "queues", "horizon"});

    RunConfig cfg;
    cfg.port.link_rate = rational_from_json(member(doc, "config", "linkRate"), "linkRate");
    if (const Json* h = optional_member(doc, "horizon")) {
        cfg.horizon = rational_from_json(*h, "horizon");
        if (*cfg.horizon < 0) throw ConfigError("horizon: must be >= 0");
    }
    const Json& queues = member(doc, "config", "queues");
    if (!queues.is_array()) fail("queues", "expected an array");

    std::vector<std::pair<QueueConfig, std::optional<TrafficSpec>>> parsed;
    std::set<int> seen;
    for (std::size_t k = 0; k < queues.size(); ++k) {
        const std::string f = "queues[" + std::to_string(k) + "]";
        const Json& q = queues[k];
        if (!q.is_object()) fail(f, "expected an object");
        reject_unknown(q, f, {"priority", "selection", "idleSlope", "frozenByHigher", "flow", "traffic"});
        QueueConfig qc;
        const Json& pr = member(q, f, "priority");
        if (!pr.is_number_integer()) fail(f + ".priority", "expected an integer");
        qc.priority = pr.get<int>();
        if (!seen.insert(qc.priority).second)
            throw ConfigError(f + ".priority: duplicate priority " + std::to_string(qc.priority));
        const std::string sel = string_from_json(member(q, f, "selection"), f + ".selection");
        if (sel == "SP") {
            qc.selection = Selection::sp;
        } else if (sel == "CBS") {
            qc.selection = Selection::cbs;
            qc.idle_slope = rational_from_json(member(q, f, "idleSlope"), f + ".idleSlope");
        } else {
            fail(f + ".selection", "expected \"SP\" or \"CBS\"");
        }
        if (sel == "SP" && optional_member(q, "idleSlope")) throw ConfigError(f + ".idleSlope: only CBS queues have an idle slope");
        if (const Json* fr = optional_member(q, "frozenByHigher")) qc.frozen_by_higher = bool_from_json(*fr, f + ".frozenByHigher");
        const Json& flow = member(q, f, "flow");
        reject_unknown(flow, f + ".flow", {"sigma", "rho", "lMin", "lMax"});
        qc.flow = FlowSpec{rational_from_json(member(flow, f + ".flow", "sigma"), f + ".flow.sigma"),
                           rational_from_json(member(flow, f + ".flow", "rho"), f + ".flow.rho"),
                           rational_from_json(member(flow, f + ".flow", "lMin"), f + ".flow.lMin"),
                           rational_from_json(member(flow, f + ".flow", "lMax"), f + ".flow.lMax")};
        std::optional<TrafficSpec> traffic;
        if (const Json* t = optional_member(q, "traffic")) traffic = traffic_from_json(*t, f + ".traffic");
        parsed.emplace_back(qc, traffic);
    }
    std::stable_sort(parsed.begin(), parsed.end(),
                     [](const auto& a, const auto& b) { return a.first.priority < b.first.priority; });
    for (auto& [qc, t] : parsed) {
        cfg.port.queues.push_back(qc);
        cfg.traffic.push_back(t);
    }
    cfg.port.validate();
    return cfg;
}

Json to_json(const RunConfig& cfg) {
    Json queues = Json::array();
    for (std::size_t k = 0; k < cfg.port.queues.size(); ++k) {
        const QueueConfig& q = cfg.port.queues[k];
        Json qj{{"priority", q.priority}, {"selection", q.selection == Selection::sp ? "SP" : "CBS"}};
        if (q.selection == Selection::cbs) {
            qj["idleSlope"] = to_json(q.idle_slope);
            qj["frozenByHigher"] = q.frozen_by_higher;
        }
        qj["flow"] = to_json(q.flow);
        if (k < cfg.traffic.size() && cfg.traffic[k]) qj["traffic"] = to_json(*cfg.traffic[k]);
        queues.push_back(qj);
    }
    Json out{{"linkRate", to_json(cfg.port.link_rate)}, {"queues", queues}};
    if (cfg.horizon) out["horizon"] = to_json(*cfg.horizon);
    return out;
}

std::string trace_to_csv(const PacketTrace& trace) {
    std::ostringstream os;
    os << "n,time,length\n";
    for (std::size_t n = 1; n <= trace.size(); ++n) os << n << ',' << trace.time(n) << ',' << trace.length(n) << '\n';
    return os.str();
}

PacketTrace trace_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<Packet> packets;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line == "n,time,length") continue;
        const std::string where = "line " + std::to_string(lineno);
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        if (cells.size() != 3) throw FormatError(where + ": expected n,time,length");
        if (cells[0] != std::to_string(packets.size() + 1))
            throw FormatError(where + ": expected n = " + std::to_string(packets.size() + 1));
        try {
            packets.push_back({Rational::parse(cells[1]), Rational::parse(cells[2])});
        } catch (const std::exception& e) {
            throw FormatError(where + ": " + e.what());
        }
    }
    try {
        return PacketTrace(std::move(packets));
    } catch (const TraceError& e) {
        throw FormatError(std::string("trace: ") + e.what());
    }
}

std::string credit_to_csv(const CreditTrajectory& credit) {
    std::ostringstream os;
    os << "start,end,slope,startValue\n";
    for (const auto& s : credit.segments) os << s.start << ',' << s.end << ',' << s.slope << ',' << s.start_value << '\n';
    return os.str();
}

std::string display(const Rational& r) {
    if (r.is_integer()) return r.str();
    return r.str() + " (" + r.decimal() + ")";
}

std::string display(const ExtendedValue& v) { return v.is_infinite() ? "unbounded" : display(v.value()); }

}  // namespace tsncalc
