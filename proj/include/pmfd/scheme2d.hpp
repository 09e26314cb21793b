#pragma once

#include "pmfd/implicit1d.hpp"

namespace pmfd {

struct Problem2D {
    Grid2D grid;
    PressureLaw law;
    /// Pressure-fed or constant growth.
    GrowthModel growth;
    ImplicitStepParams params;
    /// Grids with at most this many nodes use a sparse direct solve for the
    /// Newton correction; larger ones use preconditioned BiCGSTAB.
    std::size_t direct_solver_limit = 300 * 300;
    /// Sweep budget of the nonlinear Gauss-Seidel fallback.
    long gauss_seidel_max_sweeps = 20000;

    double nu() const noexcept { return params.dt / grid.dx(); }
};

/// (1 - dt G) N - nu (x-flux difference + y-flux difference) - N_old, with the
/// A-flux of the 1D scheme on every face and zero flux through the boundary.
Field residual2d(std::span<const double> next, std::span<const double> curr,
                 const Problem2D& problem);

struct Step2DStats {
    long newton_iterations = 0;
    long gauss_seidel_fallbacks = 0;
};

/// Newton with a sparse five-point Jacobian and a line search projected onto
/// [0, n_H]; falls back to red-black nonlinear Gauss-Seidel when Newton fails.
Field step2d(std::span<const double> curr, const Problem2D& problem, Step2DStats* stats = nullptr);

/// Red-black nonlinear Gauss-Seidel: each node solves its own scalar equation
/// with the neighbours frozen. Exposed for testing.
Field step2d_gauss_seidel(std::span<const double> curr, const Problem2D& problem);

/// (sum over x- and y-faces of |face gradient|^q * dx^2)^(1/q); the maximum
/// face gradient when q is infinite. Throws DomainError for q < 1.
double gradient_lq_norm(std::span<const double> p, const Grid2D& grid, double q);

/// Minimum of p over the nodes within `radius` of the origin.
double min_near_origin(std::span<const double> p, const Grid2D& grid, double radius);

}  // namespace pmfd
