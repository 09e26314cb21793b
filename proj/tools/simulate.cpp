// Command-line driver: one subcommand per experiment plus check-invariants.
//
// Exit status: 0 success, 1 solver failure, 2 configuration error,
// 3 assertion failure (invariant violation or non-monotone AP sweep).

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>

#include "pmfd/config.hpp"
#include "pmfd/csv.hpp"
#include "pmfd/errors.hpp"
#include "pmfd/experiments.hpp"

namespace {

enum Exit { kOk = 0, kSolverFailure = 1, kConfigError = 2, kAssertionFailure = 3 };

struct Options {
    std::string config;
    std::string out;
    long cadence = 0;
};

int run(std::optional<pmfd::Experiment> experiment, const Options& opt, bool check) {
    pmfd::SimConfig cfg;
    try {
        cfg = pmfd::load_config(opt.config, experiment);
        if (opt.cadence > 0) cfg.cadence = opt.cadence;
        if (!opt.out.empty()) cfg.out_dir = opt.out;
        pmfd::validate(cfg);
    } catch (const pmfd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const pmfd::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    pmfd::RunResult result;
    try {
        result = pmfd::run_experiment(cfg, cfg.out_dir);
    } catch (const pmfd::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolverFailure;
    }

    for (const auto& [key, value] : result.metrics)
        std::cout << key << " = " << pmfd::format_real(value) << '\n';
    for (const auto& v : result.violations) std::cerr << "violation: " << v << '\n';

    const bool sweep = cfg.experiment == pmfd::Experiment::ApSweep;
    if ((check || sweep) && !result.violations.empty()) return kAssertionFailure;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Porous-medium tumour growth simulator"};
    app.require_subcommand(1);
    Options opt;

    struct Sub {
        const char* name;
        const char* help;
        std::optional<pmfd::Experiment> experiment;
        bool check;
    };
    const Sub subs[] = {
        {"barenblatt", "Barenblatt accuracy run", pmfd::Experiment::Barenblatt, false},
        {"vitro", "In vitro nutrient model", pmfd::Experiment::Vitro, false},
        {"vivo", "In vivo nutrient model", pmfd::Experiment::Vivo, false},
        {"twospecies", "Proliferating and necrotic cells", pmfd::Experiment::TwoSpecies, false},
        {"focusing", "2D shell focusing", pmfd::Experiment::Focusing, false},
        {"ap-sweep", "Complementarity residual across gamma", pmfd::Experiment::ApSweep, false},
        {"check-invariants", "Run the experiment named in the config and check every bound",
         std::nullopt, true},
    };
    std::vector<std::pair<CLI::App*, const Sub*>> commands;
    for (const auto& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        cmd->add_option("--config", opt.config, "Experiment configuration file")->required();
        cmd->add_option("--out", opt.out, "Output directory (overrides [output] dir)");
        cmd->add_option("--cadence", opt.cadence, "Write a diagnostics row every k steps")
            ->check(CLI::PositiveNumber);
        commands.emplace_back(cmd, &s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }
    for (const auto& [cmd, sub] : commands)
        if (cmd->parsed()) return run(sub->experiment, opt, sub->check);
    return kConfigError;
}
