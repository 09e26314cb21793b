#pragma once

#include <functional>
#include <optional>

#include "pmfd/state.hpp"

namespace pmfd {

struct ImplicitStepParams {
    double dt = 0.0;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    /// Upper cap on the pseudo-time step of the monotone iteration; the step
    /// actually used is also limited by the monotonicity bound of the map.
    double monotone_pseudo_dt = 0.5;
    double monotone_tol = 1e-12;
    long monotone_max_iter = 5'000'000;
};

/// Everything that stays fixed across the steps of one run.
struct ImplicitProblem {
    Grid1D grid;
    PressureLaw law;
    GrowthModel growth;
    ImplicitStepParams params;

    double nu() const noexcept { return params.dt / grid.dx; }
};

/// A(U, V) = V Q+ - U Q- with Q = kappa (V^gamma - U^gamma)/dx, and its
/// partial derivatives. partial_1 <= 0 <= partial_2.
struct FluxPair {
    double value;
    double partial_1;
    double partial_2;
};

FluxPair flux_A(double u, double v, const PressureLaw& law, double dx);

/// Rejects dt >= 1/sup G when sup G > 0; the message quotes "dt < 1/G(0)".
void check_time_step(double dt, const GrowthModel& growth);

/// (1 - dt G_k) N_k - nu (A_{k+1/2} - A_{k-1/2}) - N_k^old, with zero flux
/// through the outer faces. `c` is the frozen nutrient for nutrient-fed laws.
Field residual(std::span<const double> next, std::span<const double> curr,
               const ImplicitProblem& problem, const std::optional<Field>& c = std::nullopt);

/// Newton's method with a tridiagonal Jacobian and a backtracking line search
/// projected onto [0, n_H]. Throws SolverError (carrying the last iterate) if
/// the residual does not reach newton_tol.
Field solve_step_newton(std::span<const double> curr, const ImplicitProblem& problem,
                        const std::optional<Field>& c = std::nullopt);

struct MonotoneResult {
    Field upper;
    Field lower;
    long iterations = 0;
};

using BracketObserver = std::function<void(const Field& upper, const Field& lower)>;

/// Pseudo-time iteration u <- u - h R(u) started from a supersolution and from
/// zero. The map is monotone for the chosen h, so the two iterates bracket the
/// solution and converge to it from above and below. The observer, when set,
/// sees both iterates after every pseudo-step.
MonotoneResult solve_step_monotone(std::span<const double> curr, const ImplicitProblem& problem,
                                   const std::optional<Field>& c = std::nullopt,
                                   const BracketObserver& observer = {});

struct StepStats {
    long newton_steps = 0;
    long monotone_fallbacks = 0;
};

/// Newton first; on failure falls back to the monotone iteration and
/// returns the midpoint of its converged bracket.
Field solve_step(std::span<const double> curr, const ImplicitProblem& problem,
                 const std::optional<Field>& c = std::nullopt, StepStats* stats = nullptr);

struct AdvanceHooks {
    /// Nutrient from the start-of-step density; required for nutrient-fed growth.
    std::function<Field(const Field& n)> nutrient;
    /// Called after every step with the previous and the new state.
    std::function<void(const SimState& prev, const SimState& next, long step)> on_step;
};

/// Implicit steps of size params.dt from state.t up to t_end; the last step is
/// shortened if t_end is not on the time lattice. Solver failures are rethrown
/// as SolverError carrying the step index.
SimState advance(const SimState& state, double t_end, const ImplicitProblem& problem,
                 const AdvanceHooks& hooks = {}, StepStats* stats = nullptr);

}  // namespace pmfd
