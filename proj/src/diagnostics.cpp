#include "pmfd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pmfd/kernels.hpp"
#include "pmfd/scheme2d.hpp"
#include "pmfd/stencil.hpp"

namespace pmfd {

double complementarity_residual(std::span<const double> n, const std::optional<Field>& c,
                                const Grid1D& grid, const PressureLaw& law,
                                const GrowthModel& growth) {
    Field p(n.size());
    pressure_into(n, law, p);
    const Field d2 = second_difference(p, grid);
    const Field g = growth_field(growth, p, c);
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += std::abs(p[k] * (d2[k] + g[k]));
    return grid.dx * s;
}

DiagnosticsRecord record(const SimState& state, const SimState* prev, const Grid1D& grid,
                         const PressureLaw& law, const GrowthModel& growth) {
    const std::size_t size = state.n.size();
    if (size != grid.size() || (prev && prev->n.size() != size))
        throw std::invalid_argument("record: state does not match the grid");
    const auto& kt = kernels::active();
    const double dx = grid.dx;
    DiagnosticsRecord r;
    r.t = state.t;
    Field p(size);
    pressure_into(state.n, law, p);
    r.mass = dx * kt.sum(state.n.data(), size);
    r.l1_pressure = dx * kt.sum_abs(p.data(), size);
    r.linf_density = kt.max_abs(state.n.data(), size);
    r.linf_pressure = kt.max_abs(p.data(), size);
    r.bv = dx * kt.sum_abs_diff(state.n.data() + 1, state.n.data(), size - 1);
    if (prev) {
        const double dt = state.t - prev->t;
        if (dt > 0.0) r.dt_l1 = dx * kt.sum_abs_diff(state.n.data(), prev->n.data(), size) / dt;
    }
    const Field q = face_gradient(p, grid);
    r.grad_l2_sq = dx * kt.sum_sq(q.data(), q.size());
    const Field d2 = face_divergence(q, dx);
    const Field g = growth_field(growth, p, state.c);
    double ab = std::numeric_limits<double>::infinity();
    double comp = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
        const double w = d2[k] + g[k];
        if (k > 0 && k + 1 < size) ab = std::min(ab, w);
        comp += std::abs(p[k] * w);
    }
    r.ab_min = ab;
    r.comp_residual = dx * comp;
    return r;
}

DiagnosticsRecord record2d(double t, std::span<const double> n, const Field* prev, double t_prev,
                           const Grid2D& grid, const PressureLaw& law, const GrowthModel& growth,
                           const std::vector<double>& lq_orders) {
    const std::size_t nx = grid.nx(), ny = grid.ny(), size = grid.size();
    if (n.size() != size || (prev && prev->size() != size))
        throw std::invalid_argument("record2d: state does not match the grid");
    const auto& kt = kernels::active();
    const double dx = grid.dx();
    const double area = dx * dx;
    DiagnosticsRecord r;
    r.t = t;
    Field p(size);
    pressure_into(n, law, p);
    r.mass = area * kt.sum(n.data(), size);
    r.l1_pressure = area * kt.sum_abs(p.data(), size);
    r.linf_density = kt.max_abs(n.data(), size);
    r.linf_pressure = kt.max_abs(p.data(), size);
    if (prev && t > t_prev) r.dt_l1 = area * kt.sum_abs_diff(n.data(), prev->data(), size) / (t - t_prev);

    double bv = 0.0, grad_sq = 0.0;
    Field lap(size, 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t k = grid.index(i, j);
            if (i + 1 < nx) {
                const double q = (p[k + 1] - p[k]) / dx;
                bv += std::abs(n[k + 1] - n[k]);
                grad_sq += q * q;
                lap[k] += q / dx;
                lap[k + 1] -= q / dx;
            }
            if (j + 1 < ny) {
                const double q = (p[k + nx] - p[k]) / dx;
                bv += std::abs(n[k + nx] - n[k]);
                grad_sq += q * q;
                lap[k] += q / dx;
                lap[k + nx] -= q / dx;
            }
        }
    }
    r.bv = area * bv;
    r.grad_l2_sq = area * grad_sq;
    const Field g = growth_field(growth, p, std::nullopt);
    double ab = std::numeric_limits<double>::infinity();
    double comp = 0.0;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t k = grid.index(i, j);
            const double w = lap[k] + g[k];
            if (i > 0 && j > 0 && i + 1 < nx && j + 1 < ny) ab = std::min(ab, w);
            comp += std::abs(p[k] * w);
        }
    }
    r.ab_min = ab;
    r.comp_residual = area * comp;
    for (double q : lq_orders) r.lq_grad_norms[q] = gradient_lq_norm(p, grid, q);
    return r;
}

double SpaceTimeL1Error::add(std::span<const double> n, double t, double dt) {
    double s = 0.0;
    for (std::size_t k = 0; k < n.size(); ++k) s += std::abs(n[k] - exact_(grid_.x(k), t));
    s *= grid_.dx;
    total_ += s * dt;
    return s;
}

double l1_error_spacetime(const std::vector<Field>& history,
                          const std::function<double(double, double)>& exact, const Grid1D& grid,
                          double dt, double t0) {
    SpaceTimeL1Error acc(grid, exact);
    for (std::size_t j = 1; j < history.size(); ++j)
        acc.add(history[j], t0 + static_cast<double>(j) * dt, dt);
    return acc.total();
}

ComplementarityTotals complementarity_sup(const std::vector<Field>& history, const PressureLaw& law,
                                          const GrowthModel& growth, const Grid1D& grid, double dt,
                                          const std::vector<Field>* nutrient) {
    ComplementarityTotals totals;
    for (std::size_t j = 1; j < history.size(); ++j) {
        std::optional<Field> c;
        if (nutrient) c = (*nutrient)[j];
        totals.add(complementarity_residual(history[j], c, grid, law, growth), dt);
    }
    return totals;
}

}  // namespace pmfd
