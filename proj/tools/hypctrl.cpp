// hypctrl: simulate controlled 2x2 balance laws and synthesize boundary gains.
//
//   hypctrl run <config-file> [--out DIR]
//   hypctrl check-prop1 --alpha A --len L
//   hypctrl convergence --scenario conservation
//
// Exit codes: 0 success, 1 other failure, 2 config/usage error, 3 numerical blow-up.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hypctrl/config.hpp"
#include "hypctrl/output.hpp"
#include "hypctrl/scenarios.hpp"
#include "hypctrl/simulation.hpp"

namespace fs = std::filesystem;
using namespace hypctrl;

namespace {

constexpr int exit_config = 2;
constexpr int exit_blowup = 3;

std::string snapshot_name(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "snapshot_t%08.4f.csv", t);
    return buf;
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return exit_config;
    }
    if (!out_override.empty()) cfg.output_dir = out_override;
    fs::create_directories(cfg.output_dir);

    SimulationResult res;
    try {
        res = run_simulation(cfg);
    } catch (const SimulationAborted& e) {
        std::cerr << "numerical blow-up: " << e.what() << " (last good record " << e.last_record() << ")\n";
        return exit_blowup;
    }

    const Grid grid = build_grid(cfg.length, cfg.cells);
    const fs::path dir(cfg.output_dir);
    write_timeseries_csv(res.records, (dir / "timeseries.csv").string());
    for (const auto& s : res.snapshots) {
        write_snapshot_csv(s.state, grid, res.gamma, (dir / snapshot_name(s.requested_t)).string());
    }
    std::cout << "scenario " << cfg.scenario << ", controller " << to_string(cfg.control.controller) << ", mu "
              << cfg.control.target_rate << ": " << res.steps << " steps of dt " << res.dt << ", "
              << res.records.size() << " records written to " << dir.string() << '\n';
    try {
        std::cout << emit_decay_report(res.records, cfg.control.target_rate);
    } catch (const std::invalid_argument& e) {
        std::cout << "no decay report: " << e.what() << '\n';
    }
    return 0;
}

int cmd_prop1(double alpha, double length) {
    const Prop1Report r = prop1_threshold(alpha, length);
    std::cout << "alpha*L            = " << r.alpha_L << '\n'
              << "max |k ln k|       = " << r.max_value << " at kappa = " << r.argmax << '\n'
              << "feasible           = " << (r.feasible ? "yes" : "no") << '\n';
    if (r.feasible) {
        std::cout << "stabilizing kappa  in (" << r.kappa_low << ", " << r.kappa_high << ")\n";
    }
    return 0;
}

int cmd_convergence(const std::string& scenario) {
    if (scenario != "conservation") {
        std::cerr << "convergence study is defined for the conservation scenario only\n";
        return exit_config;
    }
    std::cout << "# transport of a smooth pulse, t = 0.1, cfl = 0.45\n" << "N,l1_error,order\n";
    for (const auto& row : transport_convergence({32, 64, 128, 256, 512}, 0.1, 0.45)) {
        std::cout << row.cells << ',' << format_double(row.error) << ',' << row.order << '\n';
    }
    std::cout << "# reconstruction of sin(2 pi x), max node error\n" << "N,max_error,order\n";
    for (const auto& row : reconstruction_convergence({32, 64, 128, 256, 512})) {
        std::cout << row.cells << ',' << format_double(row.error) << ',' << row.order << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary feedback stabilization of 2x2 hyperbolic balance laws"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "Run a simulation described by a config file");
    run->add_option("config", config_path, "key=value config file")->required();
    run->add_option("--out", out_dir, "Output directory (overrides output_dir)");

    double alpha = 0.0;
    double length = 1.0;
    auto* prop1 = app.add_subcommand("check-prop1", "Feasible gains for the linear reflecting control");
    prop1->add_option("--alpha", alpha, "Source magnitude bound")->required()->check(CLI::NonNegativeNumber);
    prop1->add_option("--len", length, "Domain length")->required()->check(CLI::PositiveNumber);

    std::string scenario = "conservation";
    auto* conv = app.add_subcommand("convergence", "Grid convergence study");
    conv->add_option("--scenario", scenario, "Scenario name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (*run) return cmd_run(config_path, out_dir);
        if (*prop1) return cmd_prop1(alpha, length);
        if (*conv) return cmd_convergence(scenario);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
