#include "pmfd/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pmfd {

Grid1D::Grid1D(double x_min_, double x_max_, int m_)
    : x_min(x_min_), x_max(x_max_), m(m_) {
    if (m <= 0) throw std::invalid_argument("Grid1D: m must be positive");
    if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
    dx = (x_max - x_min) / (2.0 * m);
}

Grid1D Grid1D::from_spacing(double x_min, double x_max, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("Grid1D: dx must be positive");
    const double cells = (x_max - x_min) / dx;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
        throw std::invalid_argument("Grid1D: extent " + std::to_string(x_max - x_min) +
                                    " is not a multiple of dx " + std::to_string(dx));
    const auto n_cells = static_cast<long>(rounded);
    if (n_cells % 2 != 0)
        throw std::invalid_argument("Grid1D: extent/dx must be even to centre a node at the midpoint");
    return Grid1D(x_min, x_max, static_cast<int>(n_cells / 2));
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> xs(size());
    for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = x(k);
    return xs;
}

Grid2D::Grid2D(double half_x, double half_y, double dx)
    : x_axis(Grid1D::from_spacing(-half_x, half_x, dx)),
      y_axis(Grid1D::from_spacing(-half_y, half_y, dx)) {}

}  // namespace pmfd
