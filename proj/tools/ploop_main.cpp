// Command-line front end: run, report, validate and compare.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ploop/error.hpp"
#include "ploop/harness.hpp"
#include "ploop/logging.hpp"
#include "ploop/report.hpp"
#include "ploop/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInternal = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ploop::Error(ploop::ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int exit_code_for(const ploop::Error& e) {
    switch (e.code()) {
        case ploop::ErrorCode::InvariantViolation: return kExitInternal;
        default: return kExitInvalid;
    }
}

}  // namespace

int main(int argc, char** argv) {
    ploop::init_logging();

    CLI::App app{"Closed-loop product lifecycle simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its log and report");
    run_cmd->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
    run_cmd->add_option("--seed", seed, "Override the scenario seed");
    run_cmd->add_option("--out", out_dir, "Output directory for events, report and repository");

    std::string log_path;
    auto* report_cmd = app.add_subcommand("report", "Rebuild a report from an event log");
    report_cmd->add_option("--log", log_path, "Event log (JSON lines)")->required();
    bool report_json = false;
    report_cmd->add_flag("--json", report_json, "Print the JSON form instead of the table");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a scenario");
    validate_cmd->add_option("--scenario", validate_path, "Scenario file (JSON)")->required();

    std::string report_a, report_b;
    auto* compare_cmd = app.add_subcommand("compare", "Compare a feedback run (a) against a baseline run (b)");
    compare_cmd->add_option("--a", report_a, "Report JSON of the feedback run")->required();
    compare_cmd->add_option("--b", report_b, "Report JSON of the baseline run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const auto scenario = ploop::load_scenario(scenario_path);
            const auto result = ploop::run(scenario, seed);
            if (!out_dir.empty()) ploop::write_run_outputs(result, out_dir);
            std::cout << ploop::report_to_text(result.report);
        } else if (*report_cmd) {
            std::istringstream in(slurp(log_path));
            const auto report = ploop::build_report(ploop::read_log(in));
            std::cout << (report_json ? ploop::report_to_json(report) : ploop::report_to_text(report));
        } else if (*validate_cmd) {
            const auto scenario = ploop::load_scenario(validate_path);
            std::cout << "ok: " << scenario.name << " (" << scenario.nodes.size() << " nodes, "
                      << scenario.agents.size() << " agents, " << scenario.stimuli.size() << " stimuli)\n";
        } else if (*compare_cmd) {
            const auto a = ploop::report_from_json(slurp(report_a));
            const auto b = ploop::report_from_json(slurp(report_b));
            std::cout << ploop::comparison_to_text(ploop::compare(a, b));
        }
    } catch (const ploop::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}
