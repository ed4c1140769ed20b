#include <iostream>
#include <optional>
#include <string>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "cnetsched/harness/experiments.hpp"
#include "cnetsched/harness/report_io.hpp"
#include "cnetsched/harness/scenario.hpp"
#include "cnetsched/runtime/run.hpp"

using namespace cnetsched;

namespace {

void print_header(const Scenario& s) {
    std::cout << "scenario " << (s.name.empty() ? "(unnamed)" : s.name) << ": " << s.production.size()
              << " production, " << s.buffers.size() << " buffers, " << s.transports.size() << " transports, "
              << s.orders.size() << " orders\n"
              << "T_T,min = " << format_duration(s.t_transport_min())
              << ", T_B,min = " << format_duration(s.params.t_buffer_min) << "\n";
}

void print_report(const RunReport& r) {
    for (const auto& o : r.orders) {
        std::cout << o.order_id << " (" << o.product << "): " << to_string(o.status);
        if (!o.reason.empty()) std::cout << " - " << o.reason;
        std::cout << "\n";
        for (const auto& s : o.stages) {
            std::cout << "  " << s.stage << " " << s.operation << " on " << s.resource << " ["
                      << format_time(s.start) << ", " << format_time(s.finish) << ") via " << to_string(s.route)
                      << "\n";
        }
    }
    std::cout << "messages: " << r.messages.total() << ", violations: " << r.violations.size() << "\n";
}

int run_command(const std::string& path, const std::string& mode, std::uint64_t seed, const std::string& gantt,
                const std::string& metrics, const std::string& trace, int hop_ms) {
    const Scenario s = load_scenario(path);
    print_header(s);
    RunOptions opt;
    opt.mode = mode == "conc" ? RunMode::concurrent : RunMode::deterministic;
    opt.seed = seed;
    opt.hop = std::chrono::milliseconds(hop_ms);
    const RunReport r = run(s, opt);
    print_report(r);
    if (!gantt.empty()) export_gantt(r, gantt);
    if (!metrics.empty()) export_metrics(r, metrics);
    if (!trace.empty()) export_trace(r, trace);
    return r.failed() == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contract-net scheduler for production, buffer and transport resources"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Log protocol violations");

    auto* run_cmd = app.add_subcommand("run", "Schedule every order of a scenario");
    std::string scenario_path, mode = "det", gantt, metrics, trace;
    std::uint64_t seed = 1;
    int hop_ms = 1;
    run_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
    run_cmd->add_option("--mode", mode, "det or conc")->check(CLI::IsMember({"det", "conc"}));
    run_cmd->add_option("--seed", seed, "Tie-break seed of the deterministic kernel");
    run_cmd->add_option("--hop-ms", hop_ms, "Latency of one message hop")->check(CLI::PositiveNumber);
    run_cmd->add_option("--gantt", gantt, "Write GANTT CSV here");
    run_cmd->add_option("--metrics", metrics, "Write metrics JSON here");
    run_cmd->add_option("--trace", trace, "Write the message trace (JSON lines) here");

    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    std::string validate_path;
    validate_cmd->add_option("scenario", validate_path, "Scenario file")->required();

    auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment preset");
    std::string preset, out_path;
    ExperimentOptions eopt;
    exp_cmd->add_option("preset", preset, "hosting-sweep, scaling-sweep or shop-compare")
        ->required()
        ->check(CLI::IsMember({"hosting-sweep", "scaling-sweep", "shop-compare"}));
    exp_cmd->add_option("--scenario-dir", eopt.scenario_dir, "Directory with the bundled scenarios");
    exp_cmd->add_option("--orders", eopt.orders, "Orders per run");
    exp_cmd->add_option("--hop-ms", eopt.hop_ms, "Latency of one message hop in concurrent runs");
    exp_cmd->add_option("--seed", eopt.seed, "Seed");
    exp_cmd->add_option("--out", out_path, "Write the result JSON here");

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

    try {
        if (*run_cmd) return run_command(scenario_path, mode, seed, gantt, metrics, trace, hop_ms);
        if (*validate_cmd) {
            const Scenario s = load_scenario(validate_path);
            print_header(s);
            std::cout << "ok\n";
            return 0;
        }
        if (*exp_cmd) {
            const ExperimentResult r = run_experiment(preset, eopt);
            std::cout << r.summary;
            if (!out_path.empty()) write_text(out_path, r.json);
            return r.all_done ? 0 : 2;
        }
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
