#pragma once

#include "pmfd/state.hpp"

namespace pmfd {

/// Scratch storage for repeated right-hand side evaluations.
struct RhsWorkspace {
    Field p;
    Field q;       // interior face gradients
    Field flux;    // n_{k+1/2} q_{k+1/2}
    Field g;       // growth rate per node
    Field rhs;
};

/// dn_k/dt = (F_{k+1/2} - F_{k-1/2})/dx + n_k G_k with upwind face fluxes
/// F = n_{k+1/2} q_{k+1/2} and zero flux through the outer boundary faces.
Field rhs(const SimState& state, const Grid1D& grid, const PressureLaw& law,
          const GrowthModel& growth);

/// Same as rhs(), reusing `ws`; the result is left in ws.rhs.
void rhs_into(const SimState& state, const Grid1D& grid, const PressureLaw& law,
              const GrowthModel& growth, RhsWorkspace& ws);

/// Largest forward-Euler step within the diffusion budget
/// c_cfl * dx^2 / (gamma * kappa * max n^gamma), further limited so that
/// dt * max|G| <= c_cfl.
double stable_dt(std::span<const double> n, const Grid1D& grid, const PressureLaw& law,
                 const GrowthModel& growth, const std::optional<Field>& c = std::nullopt,
                 double c_cfl = 0.2);

/// One forward-Euler step n <- n + dt * rhs. Values in [-1e-14, 0) are
/// clipped to zero; anything further below zero, or above n_H by more than
/// 1e-10, raises StabilityError.
SimState step_explicit(const SimState& state, double dt, const Grid1D& grid,
                       const PressureLaw& law, const GrowthModel& growth);

/// min over interior nodes of delta^2 p_k + G(p_k).
double ab_monitor(const SimState& state, const Grid1D& grid, const PressureLaw& law,
                  const GrowthModel& growth);

}  // namespace pmfd
