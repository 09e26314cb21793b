#pragma once

#include <span>

#include "pmfd/grid.hpp"

namespace pmfd {

/// Donor-cell density on a face: n_right when q > 0, n_left when q < 0, and 0
/// when q == 0 (the face flux vanishes either way).
inline double upwind_face_value(double n_left, double n_right, double q_face) noexcept {
    if (q_face > 0.0) return n_right;
    if (q_face < 0.0) return n_left;
    return 0.0;
}

/// Interior face gradients q_{k+1/2} = (p_{k+1} - p_k)/dx, k = 0..N-2.
/// The two outer boundary faces carry zero gradient and are not stored.
Field face_gradient(std::span<const double> p, const Grid1D& grid);

/// delta^2 p_k = (q_{k+1/2} - q_{k-1/2})/dx with zero boundary-face gradients,
/// so the end nodes see (p_1 - p_0)/dx^2 and (p_{N-2} - p_{N-1})/dx^2.
Field second_difference(std::span<const double> p, const Grid1D& grid);

/// Node values from face values: (f_{k+1/2} - f_{k-1/2})/dx with zero outer
/// faces. `faces` has N-1 entries; the result has N.
Field face_divergence(std::span<const double> faces, double dx);

}  // namespace pmfd
