#include "ehsim/config.hpp"
#include "ehsim/report.hpp"
#include "ehsim/sim.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace
{

enum ExitCode : int {
    ok = 0,
    config_error = 1,
    blow_up = 2,
};

struct Outcome {
    int code = ExitCode::ok;
    std::string report;
};

ehsim::RunConfig resolve(const std::string &config_path, const ehsim::ConfigOverrides &overrides)
{
    ehsim::RunConfig cfg = config_path.empty() ? ehsim::parse_config("")
                                               : ehsim::load_config(config_path);
    return ehsim::apply_overrides(std::move(cfg), overrides);
}

Outcome execute(const ehsim::RunConfig &cfg, const std::string &label)
{
    Outcome outcome;
    std::ostringstream os;
    if (!label.empty()) {
        os << "== " << label << '\n';
    }
    try {
        const auto start = std::chrono::steady_clock::now();
        const ehsim::SimResult result =
            ehsim::run(cfg.scenario, cfg.plant, cfg.controller, cfg.estimator());
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!cfg.output.empty() && cfg.emit_plot_data) {
            ehsim::write_csv(result, cfg.output);
            os << "wrote " << result.rows.size() << " rows to " << cfg.output << '\n';
        }
        ehsim::summarize(os, result, wall);
    } catch (const ehsim::NumericalBlowUp &err) {
        os << "error: numerical blow-up: " << err.what() << '\n';
        outcome.code = ExitCode::blow_up;
    } catch (const std::exception &err) {
        os << "error: " << err.what() << '\n';
        outcome.code = ExitCode::config_error;
    }
    outcome.report = os.str();
    return outcome;
}

int run_batch(const fs::path &dir, const ehsim::ConfigOverrides &overrides)
{
    std::vector<fs::path> configs;
    std::error_code ec;
    for (const auto &entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
            configs.push_back(entry.path());
        }
    }
    if (ec) {
        std::cerr << "error: cannot read batch directory " << dir << ": " << ec.message() << '\n';
        return ExitCode::config_error;
    }
    std::sort(configs.begin(), configs.end());

    std::vector<std::future<Outcome>> jobs;
    for (const auto &path : configs) {
        jobs.push_back(std::async(std::launch::async, [path, overrides] {
            ehsim::RunConfig cfg;
            try {
                cfg = resolve(path.string(), overrides);
            } catch (const ehsim::ConfigError &err) {
                return Outcome{ExitCode::config_error,
                               "== " + path.string() + "\nerror: " + err.what() + '\n'};
            }
            if (cfg.output.empty()) {
                cfg.output = fs::path(path).replace_extension(".csv").string();
            }
            return execute(cfg, path.string());
        }));
    }
    int code = ExitCode::ok;
    for (auto &job : jobs) {
        const Outcome outcome = job.get();
        std::cout << outcome.report;
        code = std::max(code, outcome.code);
    }
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Electrohydraulic servo simulator with adaptive fuzzy dead-zone compensation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string scenario_name;
    std::optional<double> duration;
    bool freeze = false;
    bool print = false;
    std::string batch_dir;

    auto *run = app.add_subcommand("run", "Run a closed-loop scenario");
    run->add_option("--config", config_path, "Flat key = value configuration file")
        ->check(CLI::ExistingFile);
    run->add_option("--out", out_path, "CSV output path");
    run->add_option("--scenario", scenario_name, "Supply pressure scenario")
        ->check(CLI::IsMember({"constant-ps", "varying-ps"}));
    run->add_option("--duration", duration, "Simulated time [s]");
    run->add_flag("--freeze-adaptation", freeze, "Disable adaptation and compensation");
    run->add_flag("--print-config", print, "Print the resolved configuration and exit");
    run->add_option("--batch", batch_dir, "Run every *.cfg file in a directory concurrently")
        ->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        const int code = app.exit(err);
        return code == 0 ? ExitCode::ok : ExitCode::config_error;
    }

    ehsim::ConfigOverrides overrides;
    if (!scenario_name.empty()) {
        overrides.supply_mode = ehsim::parse_supply_mode(scenario_name);
    }
    overrides.duration = duration;
    overrides.freeze_adaptation = freeze;
    if (!out_path.empty()) {
        overrides.output = out_path;
    }

    if (!batch_dir.empty()) {
        return run_batch(batch_dir, overrides);
    }

    ehsim::RunConfig cfg;
    try {
        cfg = resolve(config_path, overrides);
    } catch (const ehsim::ConfigError &err) {
        std::cerr << "error: " << err.what() << '\n';
        return ExitCode::config_error;
    }
    if (print) {
        ehsim::print_config(std::cout, cfg);
        return ExitCode::ok;
    }
    const Outcome outcome = execute(cfg, "");
    (outcome.code == ExitCode::ok ? std::cout : std::cerr) << outcome.report;
    return outcome.code;
}
