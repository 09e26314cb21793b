#include "pmfd/stencil.hpp"

#include <stdexcept>

#include "pmfd/kernels.hpp"

namespace pmfd {

Field face_gradient(std::span<const double> p, const Grid1D& grid) {
    if (p.size() != grid.size()) throw std::invalid_argument("face_gradient: field/grid size mismatch");
    Field q(p.size() - 1);
    kernels::active().face_diff(p.data(), q.size(), grid.dx, q.data());
    return q;
}

Field face_divergence(std::span<const double> faces, double dx) {
    const std::size_t n = faces.size() + 1;
    Field out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double right = k + 1 < n ? faces[k] : 0.0;
        const double left = k > 0 ? faces[k - 1] : 0.0;
        out[k] = (right - left) / dx;
    }
    return out;
}

Field second_difference(std::span<const double> p, const Grid1D& grid) {
    return face_divergence(face_gradient(p, grid), grid.dx);
}

}  // namespace pmfd
