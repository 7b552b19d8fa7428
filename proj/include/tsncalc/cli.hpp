#pragma once

#include "tsncalc/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace tsncalc {

enum class Command { analyze, simulate, verify, compare, counterexample };
enum class OutputFormat { text, json, csv };

std::optional<Command> command_from_string(const std::string& name);
std::optional<OutputFormat> format_from_string(const std::string& name);

struct RunSpec {
    Command command = Command::analyze;
    std::filesystem::path config_path;  // unused by counterexample
    OutputFormat format = OutputFormat::text;
    std::uint64_t seed = 1;
    std::size_t trials = 10;                  // verify: random scenarios beyond the configured traffic
    std::optional<std::filesystem::path> out;  // directory for the report and CSV artifacts
    std::optional<std::string> kind;           // counterexample: one kind, default all
};

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 1 violation found, 2 bad input or unusable configuration
    std::string report;
    std::string diagnostics;
};

// Never throws for bad input; errors are reported through the outcome.
RunOutcome run(const RunSpec& opts);

// Report renderers, exposed for tests.
std::string render_bound_report(const BoundReport& report, OutputFormat format);

// Persists a scenario as a config whose queues carry explicit traffic, so it
// can be replayed with `simulate`.
RunConfig scenario_config(const PortConfig& port, const Scenario& scenario);

}  // namespace tsncalc
