#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pmfd {

/// Field values at grid nodes. Row-major (x fastest) on 2D grids.
using Field = std::vector<double>;

/// Uniform node-centred mesh x_k = x_min + k*dx, k = 0..2m.
///
/// The node count is always odd (2m + 1) so that a domain symmetric about the
/// origin has a node at x = 0. Coordinates are measured from the midpoint, so
/// on a symmetric domain x_{2m-k} == -x_k exactly.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 0.0;
    int m = 0;
    double dx = 0.0;

    /// Grid on [x_min, x_max] with 2m sub-intervals.
    Grid1D(double x_min, double x_max, int m);

    /// Grid on [x_min, x_max] with the given spacing; the extent must be an
    /// even multiple of dx to within 1e-9 relative.
    static Grid1D from_spacing(double x_min, double x_max, double dx);

    std::size_t size() const noexcept { return static_cast<std::size_t>(2 * m + 1); }
    double x(std::size_t k) const noexcept {
        if (k == 0) return x_min;
        if (k == size() - 1) return x_max;
        return 0.5 * (x_min + x_max) + (static_cast<double>(k) - m) * dx;
    }
    std::vector<double> nodes() const;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// Square-cell grid on [-half_x, half_x] x [-half_y, half_y].
struct Grid2D {
    Grid1D x_axis;
    Grid1D y_axis;

    Grid2D(double half_x, double half_y, double dx);

    double dx() const noexcept { return x_axis.dx; }
    std::size_t nx() const noexcept { return x_axis.size(); }
    std::size_t ny() const noexcept { return y_axis.size(); }
    std::size_t size() const noexcept { return nx() * ny(); }
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx() + i; }
    double x(std::size_t i) const noexcept { return x_axis.x(i); }
    double y(std::size_t j) const noexcept { return y_axis.x(j); }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

}  // namespace pmfd
