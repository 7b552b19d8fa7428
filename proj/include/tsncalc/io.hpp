#pragma once

#include "tsncalc/bounds.hpp"
#include "tsncalc/conformance.hpp"
#include "tsncalc/simulator.hpp"
#include "tsncalc/tsn_port.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsncalc {

using Json = nlohmann::ordered_json;

// Malformed input: bad JSON, a missing or mistyped field, a bad CSV line.
// The message starts with the offending field path.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rationals are written as "p" or "p/q" strings. Readers also take JSON
// integers and decimal strings such as "0.25".
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j, const std::string& field);
// "inf" for infinity.
Json to_json(const ExtendedValue& v);
ExtendedValue extended_from_json(const Json& j, const std::string& field);

// {"points": [{"x", "left", "value", "right"}...], "terminalSlope",
//  "valueAtZero", "unbounded"?: {"from", "inclusive"}}
Json to_json(const Curve& c);
Curve curve_from_json(const Json& j, const std::string& field);

// Tagged by "type": "service-curve", "g-server", "gx-server".
Json to_json(const ServerModel& m);
ServerModel server_model_from_json(const Json& j, const std::string& field);
// Tagged by "type": "arrival-curve", "g-regular".
Json to_json(const TrafficModel& m);
TrafficModel traffic_model_from_json(const Json& j, const std::string& field);

Json to_json(const FlowSpec& f);
Json to_json(const PreconditionWitness& w);
Json to_json(const Violation& v);
Json to_json(const AnalyzerResult& r);
Json to_json(const BoundReport& r);
Json to_json(const LiteratureBounds& b);
Json to_json(const QueueComparison& c);

// Traffic of one queue in a config file. The flow comes from the queue and the
// horizon from the config, so only the remaining parameters are stored.
struct TrafficSpec {
    enum class Kind { greedy, lrq, explicit_trace, random };
    Kind kind = Kind::random;
    Rational packet_size;        // greedy
    Rational rate;               // lrq
    std::vector<Rational> sizes;  // lrq
    PacketTrace trace;            // explicit_trace
    std::uint64_t seed = 0;       // random

    TrafficPattern pattern(const FlowSpec& flow, const Rational& horizon) const;
    friend bool operator==(const TrafficSpec&, const TrafficSpec&) = default;
};

struct RunConfig {
    PortConfig port;
    std::vector<std::optional<TrafficSpec>> traffic;  // by priority - 1
    std::optional<Rational> horizon;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Parses and validates a config document. Queues may be listed in any order.
// Throws FormatError for schema violations and ConfigError for invariant
// violations; both name the field.
RunConfig parse_config(std::string_view bytes);
Json to_json(const RunConfig& cfg);

// CSV with header `n,time,length`.
std::string trace_to_csv(const PacketTrace& trace);
PacketTrace trace_from_csv(std::string_view text);
// CSV with header `start,end,slope,startValue`.
std::string credit_to_csv(const CreditTrajectory& credit);

// "137/20 (6.85)", "10" for integers, "unbounded" for infinity.
std::string display(const Rational& r);
std::string display(const ExtendedValue& v);

}  // namespace tsncalc
