#include "tsncalc/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("tsncalc");
    logger->set_pattern("[%l] %v");
    logger->set_level(spdlog::level::warn);
    if (const char* level = std::getenv("TSNCALC_LOG")) logger->set_level(spdlog::level::from_str(level));
    spdlog::set_default_logger(logger);
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Delay bounds, simulation and conformance checks for TSN egress ports"};
    app.require_subcommand(1);

    tsncalc::RunSpec opts;
    std::string format = "text";
    std::string config;
    std::string out;
    std::string kind;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config, "port config (JSON)");
        if (needs_config) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--out", out, "directory for the report and artifacts");
    };

    auto* analyze = app.add_subcommand("analyze", "service models and delay bound of every queue");
    add_common(analyze, true);
    auto* simulate = app.add_subcommand("simulate", "simulate the configured traffic");
    add_common(simulate, true);
    simulate->add_option("--seed", opts.seed, "seed for queues without configured traffic");
    auto* verify = app.add_subcommand("verify", "check simulated traces against the models and bounds");
    add_common(verify, true);
    verify->add_option("--seed", opts.seed, "seed for random scenarios");
    verify->add_option("--trials", opts.trials, "random scenarios beyond the configured traffic");
    auto* compare = app.add_subcommand("compare", "the four delay-bound approaches per queue");
    add_common(compare, true);
    auto* counter = app.add_subcommand("counterexample", "packetization counterexamples");
    add_common(counter, false);
    counter->add_option("--kind", kind, "link_arrival, link_service, sp_service or cbs_service");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    opts.command = *tsncalc::command_from_string(app.get_subcommands().front()->get_name());
    opts.format = *tsncalc::format_from_string(format);
    opts.config_path = config;
    if (!out.empty()) opts.out = out;
    if (!kind.empty()) opts.kind = kind;

    const tsncalc::RunOutcome outcome = tsncalc::run(opts);
    std::cout << outcome.report;
    std::cerr << outcome.diagnostics;
    return outcome.exit_code;
}
