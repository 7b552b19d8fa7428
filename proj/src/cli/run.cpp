#include "tsncalc/cli.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <map>
#include <sstream>

namespace tsncalc {

namespace fs = std::filesystem;

std::optional<Command> command_from_string(const std::string& name) {
    static const std::map<std::string, Command> names{{"analyze", Command::analyze},
                                                      {"simulate", Command::simulate},
                                                      {"verify", Command::verify},
                                                      {"compare", Command::compare},
                                                      {"counterexample", Command::counterexample}};
    const auto it = names.find(name);
    return it == names.end() ? std::nullopt : std::optional(it->second);
}

std::optional<OutputFormat> format_from_string(const std::string& name) {
    if (name == "text") return OutputFormat::text;
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    return std::nullopt;
}

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Left-aligned text columns separated by two spaces.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string render() const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_)
            for (std::size_t k = 0; k < r.size(); ++k) {
                if (width.size() <= k) width.push_back(0);
                width[k] = std::max(width[k], r[k].size());
            }
        std::ostringstream os;
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t k = 0; k < r.size(); ++k) {
                line += r[k];
                if (k + 1 < r.size()) line += std::string(width[k] - r[k].size() + 2, ' ');
            }
            os << line << '\n';
        }
        return os.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string csv_line(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) out += (k ? "," : "") + cells[k];
    return out + '\n';
}

std::string exact(const ExtendedValue& v) { return v.str(); }

std::string opt_display(const std::optional<Rational>& r) { return r ? display(*r) : "-"; }
std::string opt_exact(const std::optional<Rational>& r) { return r ? r->str() : ""; }

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

std::string extension(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        case OutputFormat::text: break;
    }
    return "txt";
}

RunConfig load_config(const RunSpec& opts) {
    if (opts.config_path.empty()) throw IoError("--config is required for this command");
    RunConfig cfg = parse_config(read_file(opts.config_path));
    spdlog::debug("loaded {} queue(s) from {}", cfg.port.queues.size(), opts.config_path.string());
    return cfg;
}

Rational horizon_of(const RunConfig& cfg) { return cfg.horizon ? *cfg.horizon : scenario_horizon(cfg.port); }

// Configured traffic per queue; queues without traffic get seeded random
// conforming arrivals.
Scenario configured_scenario(const RunConfig& cfg, std::uint64_t seed) {
    const Rational horizon = horizon_of(cfg);
    Scenario sc = random_scenario(cfg.port, seed, 0, horizon);
    sc.label = "configured traffic (seed " + std::to_string(seed) + ")";
    for (std::size_t k = 0; k < cfg.port.queues.size(); ++k) {
        if (k >= cfg.traffic.size() || !cfg.traffic[k]) continue;
        const TrafficSpec& t = *cfg.traffic[k];
        const std::string field = "queues[priority " + std::to_string(k + 1) + "].traffic";
        try {
            sc.arrivals[k] = t.kind == TrafficSpec::Kind::explicit_trace
                                 ? t.trace
                                 : generate_traffic(t.pattern(cfg.port.queues[k].flow, horizon), horizon);
        } catch (const ParameterError& e) {
            throw ConfigError(field + ": " + e.what());
        }
    }
    return sc;
}

struct Analysis {
    std::string setting;
    std::optional<AnalyzerResult> result;
    std::string unavailable;  // why result is empty
};

Analysis try_analyze(const PortConfig& port, int priority) {
    Analysis a;
    try {
        a.setting = queue_setting(port, priority);
        a.result = analyze_queue(port, priority);
    } catch (const ParameterError& e) {
        if (a.setting.empty()) a.setting = "not covered";
        a.unavailable = e.what();
    }
    return a;
}

Json trace_json(const PacketTrace& t) {
    Json out = Json::array();
    for (const auto& p : t.packets()) out.push_back({{"time", to_json(p.time)}, {"length", to_json(p.length)}});
    return out;
}

Json rationals_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& r : v) out.push_back(to_json(r));
    return out;
}

// ---------------------------------------------------------------------------

bool cbs_top_with_lower_traffic(const PortConfig& port, int priority) {
    const QueueConfig& q = port.queue(priority);
    return q.selection == Selection::cbs && priority == 1 && port.queues.size() > 1;
}

// Utilization errors propagate; a setting without an analysis is reported
// per queue.
std::vector<Analysis> analyze_all(const PortConfig& port) {
    std::vector<Analysis> out;
    for (const auto& q : port.queues) {
        Analysis a;
        try {
            a.setting = queue_setting(port, q.priority);
            a.result = analyze_queue(port, q.priority);
        } catch (const UtilizationError&) {
            throw;
        } catch (const ConfigError& e) {
            a.setting = "not covered";
            a.unavailable = e.what();
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::string uncovered_notes(const std::vector<Analysis>& all) {
    std::string out;
    for (std::size_t k = 0; k < all.size(); ++k)
        if (!all[k].result) out += "queue " + std::to_string(k + 1) + " not covered: " + all[k].unavailable + "\n";
    return out;
}

RunOutcome analyze(const RunSpec& opts) {
    const RunConfig cfg = load_config(opts);
    const PortConfig& port = cfg.port;
    const std::vector<Analysis> results = analyze_all(port);

    RunOutcome out;
    if (opts.format == OutputFormat::json) {
        Json queues = Json::array();
        for (std::size_t k = 0; k < results.size(); ++k) {
            Json q{{"priority", k + 1}, {"setting", results[k].setting}};
            if (results[k].result) {
                q["result"] = to_json(*results[k].result);
            } else {
                q["notCovered"] = results[k].unavailable;
            }
            queues.push_back(q);
        }
        out.report = Json{{"command", "analyze"}, {"linkRate", to_json(port.link_rate)}, {"queues", queues}}.dump(2) + "\n";
    } else if (opts.format == OutputFormat::csv) {
        out.report = csv_line({"priority", "setting", "rate", "latency", "serviceLatency", "creditMax", "delayBound"});
        for (std::size_t k = 0; k < results.size(); ++k) {
            if (!results[k].result) {
                out.report += csv_line({std::to_string(k + 1), results[k].setting, "", "", "", "", ""});
                continue;
            }
            const auto& c = results[k].result->constants;
            out.report += csv_line({std::to_string(k + 1), results[k].setting, opt_exact(c.rate), opt_exact(c.latency),
                                    opt_exact(c.service_latency), opt_exact(c.credit_max),
                                    exact(results[k].result->delay_bound)});
        }
    } else {
        Table t({"queue", "setting", "rate", "latency", "service latency", "credit max", "delay bound"});
        bool footnote = false;
        for (std::size_t k = 0; k < results.size(); ++k) {
            std::string setting = results[k].setting;
            if (!results[k].result) {
                t.add({std::to_string(k + 1), setting, "-", "-", "-", "-", "-"});
                continue;
            }
            const auto& c = results[k].result->constants;
            if (cbs_top_with_lower_traffic(port, static_cast<int>(k + 1))) {
                setting += " *";
                footnote = true;
            }
            t.add({std::to_string(k + 1), setting, opt_display(c.rate), opt_display(c.latency),
                   opt_display(c.service_latency), opt_display(c.credit_max), display(results[k].result->delay_bound)});
        }
        out.report = "link rate " + display(port.link_rate) + "\n" + t.render();
        if (footnote)
            out.report +=
                "* latency E2 = lMaxLower/c - (1/I - 1/c) lMin uses the largest packet of the strictly lower "
                "priority queues, and the bound is sigma/I + E2.\n";
        out.report += uncovered_notes(results);
    }
    return out;
}

// ---------------------------------------------------------------------------

Json sim_json(const PortConfig& port, const SimResult& res) {
    Json queues = Json::array();
    for (std::size_t k = 0; k < res.queues.size(); ++k) {
        const QueueRun& run = res.queues[k];
        const DelayStats st = delay_stats(run.input, run.output);
        const Analysis a = try_analyze(port, static_cast<int>(k + 1));
        Json q{{"priority", k + 1},
               {"setting", a.setting},
               {"input", trace_json(run.input)},
               {"output", trace_json(run.output)},
               {"start", rationals_json(run.start)}};
        if (!run.recovery.empty()) q["recovery"] = rationals_json(run.recovery);
        q["maxPacketDelay"] = to_json(st.max_packet_delay);
        q["virtualDelaySup"] = to_json(st.virtual_delay_sup);
        q["delayBound"] = a.result ? to_json(a.result->delay_bound) : Json(nullptr);
        queues.push_back(q);
    }
    Json out{{"command", "simulate"}, {"queues", queues}};
    if (res.credit) {
        Json segs = Json::array();
        for (const auto& s : res.credit->segments)
            segs.push_back({{"start", to_json(s.start)}, {"end", to_json(s.end)}, {"slope", to_json(s.slope)},
                            {"startValue", to_json(s.start_value)}});
        out["credit"] = {{"segments", segs}, {"resets", rationals_json(res.credit->resets)}};
    }
    Json busy = Json::array();
    for (const auto& b : res.busy_periods) busy.push_back({{"start", to_json(b.start)}, {"end", to_json(b.end)}});
    out["busyPeriods"] = busy;
    return out;
}

RunOutcome simulate(const RunSpec& opts) {
    const RunConfig cfg = load_config(opts);
    const Scenario sc = configured_scenario(cfg, opts.seed);
    spdlog::debug("simulating {} until horizon {}", sc.label, horizon_of(cfg).str());
    const SimResult res = simulate_port(cfg.port, sc.arrivals);

    RunOutcome out;
    if (opts.format == OutputFormat::json) {
        out.report = sim_json(cfg.port, res).dump(2) + "\n";
    } else if (opts.format == OutputFormat::csv) {
        out.report = csv_line({"queue", "n", "arrival", "start", "departure", "length", "delay"});
        for (std::size_t k = 0; k < res.queues.size(); ++k) {
            const QueueRun& run = res.queues[k];
            for (std::size_t n = 1; n <= run.input.size(); ++n)
                out.report += csv_line({std::to_string(k + 1), std::to_string(n), run.input.time(n).str(),
                                        run.start[n - 1].str(), run.output.time(n).str(), run.input.length(n).str(),
                                        (run.output.time(n) - run.input.time(n)).str()});
        }
    } else {
        Table t({"queue", "setting", "packets", "max delay", "virtual delay sup", "delay bound"});
        for (std::size_t k = 0; k < res.queues.size(); ++k) {
            const QueueRun& run = res.queues[k];
            const DelayStats st = delay_stats(run.input, run.output);
            const Analysis a = try_analyze(cfg.port, static_cast<int>(k + 1));
            t.add({std::to_string(k + 1), a.setting, std::to_string(run.input.size()), display(st.max_packet_delay),
                   display(st.virtual_delay_sup), a.result ? display(a.result->delay_bound) : "-"});
        }
        out.report = sc.label + ", horizon " + display(horizon_of(cfg)) + "\n" + t.render();
        if (res.credit)
            out.report += "credit: " + std::to_string(res.credit->segments.size()) + " segments, " +
                          std::to_string(res.credit->resets.size()) + " resets\n";
    }

    if (opts.out) {
        fs::create_directories(*opts.out);
        for (std::size_t k = 0; k < res.queues.size(); ++k) {
            write_file(*opts.out / ("queue" + std::to_string(k + 1) + "_input.csv"), trace_to_csv(res.queues[k].input));
            write_file(*opts.out / ("queue" + std::to_string(k + 1) + "_output.csv"), trace_to_csv(res.queues[k].output));
        }
        if (res.credit) write_file(*opts.out / "credit.csv", credit_to_csv(*res.credit));
        write_file(*opts.out / "scenario.json", to_json(scenario_config(cfg.port, sc)).dump(2) + "\n");
    }
    return out;
}

// ---------------------------------------------------------------------------

struct CheckRow {
    std::size_t scenario;
    int priority;
    std::string check;
    CheckResult violation;
};

std::vector<CheckRow> verify_scenario(const PortConfig& port, const Scenario& sc, std::size_t index) {
    std::vector<CheckRow> rows;
    const SimResult res = simulate_port(port, sc.arrivals);
    for (std::size_t k = 0; k < res.queues.size(); ++k) {
        const int p = static_cast<int>(k + 1);
        const QueueRun& run = res.queues[k];
        const FlowSpec& flow = port.queues[k].flow;
        rows.push_back({index, p, "arrival curve", check_arrival_curve(run.input, flow.arrival_curve())});
        const Analysis a = try_analyze(port, p);
        if (!a.result) continue;
        rows.push_back({index, p, "service curve", check_service_curve(run.input, run.output, a.result->service_curve)});
        for (std::size_t m = 0; m < a.result->gx_models.size(); ++m)
            rows.push_back({index, p, "g^x model " + std::to_string(m + 1),
                            check_gx_server(run.input, run.output, a.result->gx_models[m])});
        const DelayStats st = delay_stats(run.input, run.output);
        CheckResult bound;
        if (ExtendedValue(st.max_packet_delay) > a.result->delay_bound) {
            Violation v;
            v.definition = "delay bound";
            for (std::size_t n = 1; n <= run.input.size(); ++n)
                if (st.per_packet[n - 1] == st.max_packet_delay) {
                    v.n = n;
                    break;
                }
            v.lhs = st.max_packet_delay;
            v.rhs = a.result->delay_bound;
            bound = v;
        }
        rows.push_back({index, p, "delay bound", bound});
    }
    return rows;
}

RunOutcome verify(const RunSpec& opts) {
    const RunConfig cfg = load_config(opts);
    std::vector<Scenario> scenarios{configured_scenario(cfg, opts.seed)};
    for (std::size_t t = 0; t < opts.trials; ++t)
        scenarios.push_back(random_scenario(cfg.port, opts.seed, t + 1, horizon_of(cfg)));
    for (const auto& q : cfg.port.queues) {
        const Analysis a = try_analyze(cfg.port, q.priority);
        if (!a.result) spdlog::warn("queue {}: no analysis ({})", q.priority, a.unavailable);
    }

    std::vector<CheckRow> rows;
    std::optional<std::size_t> first_failure;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        spdlog::debug("verifying {}", scenarios[i].label);
        for (auto& r : verify_scenario(cfg.port, scenarios[i], i)) {
            if (r.violation && !first_failure) first_failure = i;
            rows.push_back(std::move(r));
        }
    }
    const std::size_t failures =
        static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& r) { return r.violation.has_value(); }));

    RunOutcome out;
    out.exit_code = failures ? 1 : 0;
    if (opts.format == OutputFormat::json) {
        Json checks = Json::array();
        for (const auto& r : rows) {
            Json c{{"scenario", r.scenario}, {"priority", r.priority}, {"check", r.check}, {"ok", !r.violation}};
            if (r.violation) c["violation"] = to_json(*r.violation);
            checks.push_back(c);
        }
        Json labels = Json::array();
        for (const auto& s : scenarios) labels.push_back(s.label);
        out.report = Json{{"command", "verify"}, {"scenarios", labels}, {"checks", checks}, {"violations", failures}}.dump(2) + "\n";
    } else if (opts.format == OutputFormat::csv) {
        out.report = csv_line({"scenario", "queue", "check", "verdict", "witness"});
        for (const auto& r : rows)
            out.report += csv_line({std::to_string(r.scenario), std::to_string(r.priority), r.check,
                                    r.violation ? "violation" : "ok", r.violation ? "\"" + r.violation->describe() + "\"" : ""});
    } else {
        Table t({"queue", "check", "verdict"});
        for (const auto& r : rows)
            if (r.scenario == 0) t.add({std::to_string(r.priority), r.check, r.violation ? "VIOLATION" : "ok"});
        std::ostringstream os;
        os << scenarios[0].label << "\n" << t.render();
        os << scenarios.size() << " scenario(s), " << rows.size() << " checks, " << failures << " violation(s)\n";
        for (const auto& r : rows)
            if (r.violation)
                os << "scenario " << r.scenario << " (" << scenarios[r.scenario].label << "), queue " << r.priority
                   << ": " << r.violation->describe() << "\n";
        out.report = os.str();
    }
    if (first_failure) {
        out.diagnostics = "verification failed in " + scenarios[*first_failure].label + "\n";
        if (opts.out) {
            fs::create_directories(*opts.out);
            const fs::path witness = *opts.out / "witness_scenario.json";
            write_file(witness, to_json(scenario_config(cfg.port, scenarios[*first_failure])).dump(2) + "\n");
            out.diagnostics += "witness scenario written to " + witness.string() + "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kTableLabels{"D(alpha, beta)", "D(alpha->g, g)", "D(alpha->g, beta->g)", "D(alpha, g^x)"};

std::vector<ExtendedValue> table_values(const BoundReport& r) { return {r.min_plus, r.max_plus, r.mapped, r.integrated}; }

RunOutcome compare(const RunSpec& opts) {
    const RunConfig cfg = load_config(opts);
    const std::vector<Analysis> all = analyze_all(cfg.port);
    std::vector<QueueComparison> cmp;
    for (const auto& q : cfg.port.queues)
        if (all[static_cast<std::size_t>(q.priority - 1)].result) cmp.push_back(compare_queue(cfg.port, q.priority));

    RunOutcome out;
    if (opts.format == OutputFormat::json) {
        Json queues = Json::array();
        for (const auto& c : cmp) queues.push_back(to_json(c));
        Json skipped = Json::array();
        for (std::size_t k = 0; k < all.size(); ++k)
            if (!all[k].result) skipped.push_back({{"priority", k + 1}, {"notCovered", all[k].unavailable}});
        out.report = Json{{"command", "compare"}, {"queues", queues}, {"notCovered", skipped}}.dump(2) + "\n";
    } else if (opts.format == OutputFormat::csv) {
        out.report = csv_line({"priority", "setting", "minPlus", "maxPlus", "mapped", "integrated", "timingAnalysis",
                               "fluidServiceCurve"});
        for (const auto& c : cmp) {
            std::vector<std::string> row{std::to_string(c.priority), c.setting};
            for (const auto& v : table_values(c.report)) row.push_back(exact(v));
            row.push_back(c.literature ? exact(c.literature->timing_analysis) : "");
            row.push_back(c.literature ? exact(c.literature->fluid_service_curve) : "");
            out.report += csv_line(row);
        }
    } else {
        std::vector<std::string> header{"bound"};
        for (const auto& c : cmp) header.push_back("queue " + std::to_string(c.priority) + " (" + c.setting + ")");
        Table t(header);
        for (std::size_t row = 0; row < kTableLabels.size(); ++row) {
            std::vector<std::string> cells{kTableLabels[row]};
            for (const auto& c : cmp) cells.push_back(display(table_values(c.report)[row]));
            t.add(cells);
        }
        const bool any_sp = std::any_of(cmp.begin(), cmp.end(), [](const QueueComparison& c) { return c.literature.has_value(); });
        if (any_sp) {
            std::vector<std::string> timing{"timing analysis"}, fluid{"fluid service curve"};
            for (const auto& c : cmp) {
                timing.push_back(c.literature ? display(c.literature->timing_analysis) : "-");
                fluid.push_back(c.literature ? display(c.literature->fluid_service_curve) : "-");
            }
            t.add(timing);
            t.add(fluid);
        }
        out.report = (cmp.empty() ? std::string() : t.render()) + uncovered_notes(all);
    }
    return out;
}

// ---------------------------------------------------------------------------

RunOutcome counterexamples(const RunSpec& opts) {
    std::vector<CounterexampleKind> kinds;
    if (opts.kind) {
        const auto k = counterexample_kind(*opts.kind);
        if (!k) throw IoError("unknown counterexample kind \"" + *opts.kind + "\"");
        kinds.push_back(*k);
    } else {
        kinds = {CounterexampleKind::link_arrival, CounterexampleKind::link_service, CounterexampleKind::sp_service,
                 CounterexampleKind::cbs_service};
    }

    RunOutcome out;
    Json list = Json::array();
    std::ostringstream text;
    std::string csv = csv_line({"kind", "curve", "verdict", "witness"});
    for (const auto kind : kinds) {
        const Counterexample cx = build_counterexample(kind);
        const CheckResult refuted = cx.check(cx.refuted);
        const CheckResult repaired = cx.check(cx.repaired);
        if (!refuted || repaired) out.exit_code = 1;
        const std::string role = cx.service_role ? "service curve" : "arrival curve";
        list.push_back({{"kind", to_string(kind)},
                        {"description", cx.description},
                        {"role", role},
                        {"input", trace_json(cx.input())},
                        {"output", trace_json(cx.output())},
                        {"refuted", {{"curve", to_json(cx.refuted)}, {"violation", refuted ? to_json(*refuted) : Json(nullptr)}}},
                        {"repaired", {{"curve", to_json(cx.repaired)}, {"violation", repaired ? to_json(*repaired) : Json(nullptr)}}}});
        text << to_string(kind) << ": " << cx.description << "\n";
        text << "  refuted " << role << ": " << (refuted ? "VIOLATION, " + refuted->describe() : "ok") << "\n";
        text << "  repaired " << role << ": " << (repaired ? "VIOLATION, " + repaired->describe() : "ok") << "\n";
        csv += csv_line({to_string(kind), "refuted", refuted ? "violation" : "ok", refuted ? "\"" + refuted->describe() + "\"" : ""});
        csv += csv_line({to_string(kind), "repaired", repaired ? "violation" : "ok", repaired ? "\"" + repaired->describe() + "\"" : ""});
    }
    switch (opts.format) {
        case OutputFormat::json: out.report = Json{{"command", "counterexample"}, {"fixtures", list}}.dump(2) + "\n"; break;
        case OutputFormat::csv: out.report = csv; break;
        case OutputFormat::text: out.report = text.str(); break;
    }
    return out;
}

}  // namespace

std::string render_bound_report(const BoundReport& report, OutputFormat format) {
    const auto values = table_values(report);
    switch (format) {
        case OutputFormat::json: return to_json(report).dump(2) + "\n";
        case OutputFormat::csv: {
            std::string out = csv_line({"bound", "value"});
            for (std::size_t k = 0; k < values.size(); ++k) out += csv_line({kTableLabels[k], exact(values[k])});
            return out;
        }
        case OutputFormat::text: break;
    }
    Table t({"bound", "value"});
    for (std::size_t k = 0; k < values.size(); ++k) t.add({kTableLabels[k], display(values[k])});
    return t.render();
}

RunConfig scenario_config(const PortConfig& port, const Scenario& scenario) {
    RunConfig cfg;
    cfg.port = port;
    for (const auto& trace : scenario.arrivals) {
        TrafficSpec t;
        t.kind = TrafficSpec::Kind::explicit_trace;
        t.trace = trace;
        cfg.traffic.push_back(t);
    }
    return cfg;
}

RunOutcome run(const RunSpec& opts) {
    try {
        RunOutcome out;
        switch (opts.command) {
            case Command::analyze: out = analyze(opts); break;
            case Command::simulate: out = simulate(opts); break;
            case Command::verify: out = verify(opts); break;
            case Command::compare: out = compare(opts); break;
            case Command::counterexample: out = counterexamples(opts); break;
        }
        if (opts.out) {
            fs::create_directories(*opts.out);
            write_file(*opts.out / ("report." + extension(opts.format)), out.report);
        }
        return out;
    } catch (const UtilizationError& e) {
        return {2, "", std::string("utilization error: ") + e.what() + "\n"};
    } catch (const ConfigError& e) {
        return {2, "", std::string("config error: ") + e.what() + "\n"};
    } catch (const FormatError& e) {
        return {2, "", std::string("format error: ") + e.what() + "\n"};
    } catch (const ParameterError& e) {
        return {2, "", std::string("parameter error: ") + e.what() + "\n"};
    } catch (const TraceError& e) {
        return {2, "", std::string("trace error: ") + e.what() + "\n"};
    } catch (const IoError& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    } catch (const fs::filesystem_error& e) {
        return {2, "", std::string("error: ") + e.what() + "\n"};
    }
}

}  // namespace tsncalc
