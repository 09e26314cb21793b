#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmfd/growth.hpp"
#include "pmfd/implicit1d.hpp"

namespace pmfd {

enum class Experiment { Barenblatt, Vitro, Vivo, TwoSpecies, Focusing, ApSweep };

std::string_view experiment_name(Experiment e);
/// Accepts both "ap_sweep" and "ap-sweep".
std::optional<Experiment> parse_experiment(std::string_view name);

/// Fully resolved experiment parameters. Fields left unset in the file take
/// the defaults of the experiment.
struct SimConfig {
    Experiment experiment = Experiment::Barenblatt;
    double gamma = 0.0;
    double kappa = 1.0;
    double x_min = 0.0;
    double x_max = 0.0;
    double dx = 0.0;
    double dt = 0.0;
    double t_end = 0.0;

    // growth
    double alpha = 1.0;
    double p_h = 1.0;
    double c_b = 1.0;
    double g0 = 1.0;
    double g_low = 0.0;
    double g_high = 0.0;
    double c_threshold = 0.4;
    /// "vitro" or "vivo"; the nutrient environment of two-species and AP runs.
    std::string nutrient = "vitro";

    // initial data
    double r0 = 1.0;
    double t0 = 0.01;
    double barenblatt_c = 1.0;
    double shell_inner = 0.6;
    double shell_outer = 6.0;
    double shell_density = 0.8;

    // solver
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    double monotone_tol = 1e-12;

    // output
    long cadence = 1;
    long snapshot_every = 0;
    std::string out_dir = "out";

    std::vector<double> gammas;

    /// Growth law implied by the experiment and the growth parameters.
    GrowthModel growth() const;
    ImplicitStepParams step_params() const;
};

/// Parses and validates `key = value` text with `[section]` headers and `#`
/// comments. The experiment comes from an `experiment` key in [model] or from
/// `expected` (the CLI subcommand); if both are present they must agree.
/// Throws ConfigError naming the field (and the line for syntax errors).
SimConfig parse_config(std::string_view text, std::optional<Experiment> expected = std::nullopt);

SimConfig load_config(const std::string& path, std::optional<Experiment> expected = std::nullopt);

/// Re-validates a configuration assembled in code.
void validate(const SimConfig& config);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const SimConfig& config);

}  // namespace pmfd
