#pragma once

#include <array>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <map>
#include <string>
#include <vector>

#include "pmfd/config.hpp"
#include "pmfd/diagnostics.hpp"
#include "pmfd/nutrient.hpp"

namespace pmfd {

/// Barenblatt profile at time t0 on every node.
Field barenblatt_initial(const Grid1D& grid, double gamma, double c, double t0);

/// n = p_inf(x, 0)^(1/gamma) for the in vitro or in vivo limit pressure with
/// front at r0.
Field nutrient_initial(const Grid1D& grid, double gamma, double r0, double c_b, double g0,
                       bool vivo);

/// Density `value` on the annulus inner < r < outer, zero elsewhere.
Field shell_initial(const Grid2D& grid, double inner, double outer, double value);

/// Outermost node with p > threshold on each side; returns the larger
/// deviation of the two fronts from `radius`, or infinity if p never exceeds
/// the threshold.
double front_error(std::span<const double> p, const Grid1D& grid, double radius,
                   double threshold = 1e-6);

/// Right-most node with p > threshold (x of that node), or NaN.
double front_position(std::span<const double> p, const Grid1D& grid, double threshold = 1e-6);

/// Theorem-constant checks applied to every step of a run.
class InvariantMonitor {
public:
    /// g_sup is the G(0) of the geometric factor (1 - dt G(0))^-k; bounds
    /// on BV and on the time derivative apply when `check_variation` is set.
    InvariantMonitor(double dt, double g_sup, std::optional<double> n_h, bool check_variation);

    void observe(long step, std::span<const double> n, const DiagnosticsRecord& rec);

    const std::vector<std::string>& violations() const noexcept { return violations_; }
    double min_density() const noexcept { return min_n_; }
    double max_density() const noexcept { return max_n_; }
    double worst_mass_margin() const noexcept { return mass_margin_; }

private:
    void fail(const std::string& what);

    double dt_;
    double g_sup_;
    std::optional<double> n_h_;
    bool check_variation_;
    std::optional<double> mass0_, bv0_, dtl1_0_;
    double min_n_ = 0.0, max_n_ = 0.0;
    double mass_margin_ = std::numeric_limits<double>::infinity();
    std::vector<std::string> violations_;
};

struct RunResult {
    std::map<std::string, double> metrics;
    std::vector<std::string> violations;
    std::vector<std::filesystem::path> files;
    /// Per-gamma rows of an AP sweep: gamma, integral, sup.
    std::vector<std::array<double, 3>> sweep;
};

/// Thrown by ap_sweep when the complementarity integral is not strictly
/// decreasing in gamma.
class AssertionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs the configured experiment, writing diagnostics.csv, snapshots,
/// error.csv (barenblatt/vitro/vivo), ap_sweep.csv (AP sweep) and the
/// manifest into `out_dir`. On a solver failure the manifest is written with
/// status "solver_failure" before the error propagates.
RunResult run_experiment(const SimConfig& config, const std::filesystem::path& out_dir);

/// Complementarity integral and supremum of one in-vitro/in-vivo run at the
/// given gamma (the AP-sweep unit of work); no files.
ComplementarityTotals ap_run(const SimConfig& config, double gamma);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace pmfd
