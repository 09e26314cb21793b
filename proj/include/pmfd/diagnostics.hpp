#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pmfd/state.hpp"

namespace pmfd {

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;          // dx * sum n
    double l1_pressure = 0.0;   // dx * sum p
    double linf_density = 0.0;
    double linf_pressure = 0.0;
    double bv = 0.0;            // dx * sum |n_{k+1} - n_k|
    std::optional<double> dt_l1;  // dx * sum |n - n_prev| / (t - t_prev)
    double grad_l2_sq = 0.0;    // dx * sum |q_{k+1/2}|^2
    double ab_min = 0.0;        // min over interior nodes of delta^2 p + G
    double comp_residual = 0.0; // dx * sum |p (delta^2 p + G)|
    /// L^q norms of the face gradients keyed by q (infinity for the max norm).
    std::map<double, double> lq_grad_norms;
};

/// All scalar diagnostics of a 1D state. Nutrient-fed laws take G from state.c.
DiagnosticsRecord record(const SimState& state, const SimState* prev, const Grid1D& grid,
                         const PressureLaw& law, const GrowthModel& growth);

/// 2D analogue: cell-area weights dx^2, BV and gradient sums over x- and
/// y-faces, five-point Laplacian, and the L^q gradient norms for `lq_orders`.
DiagnosticsRecord record2d(double t, std::span<const double> n, const Field* prev, double t_prev,
                           const Grid2D& grid, const PressureLaw& law, const GrowthModel& growth,
                           const std::vector<double>& lq_orders = {});

/// sum over history entries j >= 1 (entry 0 is the initial datum) and all
/// nodes of |N_k^j - n(x_k, t0 + j dt)| dx dt.
double l1_error_spacetime(const std::vector<Field>& history,
                          const std::function<double(double, double)>& exact, const Grid1D& grid,
                          double dt, double t0 = 0.0);

/// Streaming form of l1_error_spacetime for runs too long to keep in memory.
class SpaceTimeL1Error {
public:
    SpaceTimeL1Error(Grid1D grid, std::function<double(double, double)> exact)
        : grid_(std::move(grid)), exact_(std::move(exact)) {}

    /// Adds the slab of one step of length dt ending at time t; returns the
    /// spatial L1 error dx * sum |n - exact| at t.
    double add(std::span<const double> n, double t, double dt);
    double total() const noexcept { return total_; }

private:
    Grid1D grid_;
    std::function<double(double, double)> exact_;
    double total_ = 0.0;
};

/// Time integral and supremum of the complementarity residual.
struct ComplementarityTotals {
    double integral = 0.0;
    double sup = 0.0;

    void add(double residual, double dt) {
        integral += residual * dt;
        sup = std::max(sup, residual);
    }
};

/// Complementarity residual of each history entry j >= 1, integrated with
/// weight dt. Nutrient-fed laws need the matching nutrient history.
ComplementarityTotals complementarity_sup(const std::vector<Field>& history, const PressureLaw& law,
                                          const GrowthModel& growth, const Grid1D& grid, double dt,
                                          const std::vector<Field>* nutrient = nullptr);

/// dx * sum |p (delta^2 p + G)| for one density.
double complementarity_residual(std::span<const double> n, const std::optional<Field>& c,
                                const Grid1D& grid, const PressureLaw& law,
                                const GrowthModel& growth);

}  // namespace pmfd
