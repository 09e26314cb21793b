#pragma once

#include <span>

#include "pmfd/grid.hpp"

namespace pmfd {

/// Solves the tridiagonal system with sub-diagonal `lower` (n-1 entries,
/// lower[i] couples row i+1 to column i), diagonal `diag` (n) and
/// super-diagonal `upper` (n-1). Throws DomainError on a zero pivot.
Field thomas_solve(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> rhs);

/// Allocation-free variant; `scratch` must hold n entries. `x` may alias `rhs`.
void thomas_solve_into(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<const double> rhs,
                       std::span<double> scratch, std::span<double> x);

}  // namespace pmfd
