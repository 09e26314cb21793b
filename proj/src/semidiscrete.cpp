#include "pmfd/semidiscrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pmfd/errors.hpp"
#include "pmfd/kernels.hpp"
#include "pmfd/stencil.hpp"

namespace pmfd {

namespace {

constexpr double kNegativeClip = 1e-14;
constexpr double kUpperSlack = 1e-10;

}  // namespace

Field growth_field(const GrowthModel& growth, std::span<const double> p,
                   const std::optional<Field>& c) {
    Field g(p.size());
    if (is_nutrient_fed(growth)) {
        if (!c || c->size() != p.size())
            throw std::invalid_argument("growth_field: nutrient-fed growth needs a nutrient field");
        for (std::size_t i = 0; i < p.size(); ++i) g[i] = growth_eval(growth, (*c)[i]);
    } else {
        for (std::size_t i = 0; i < p.size(); ++i) g[i] = growth_eval(growth, p[i]);
    }
    return g;
}

std::optional<double> homeostatic_density(const GrowthModel& growth, const PressureLaw& law) {
    if (auto ph = homeostatic_pressure(growth)) return law.density(*ph);
    return std::nullopt;
}

void rhs_into(const SimState& state, const Grid1D& grid, const PressureLaw& law,
              const GrowthModel& growth, RhsWorkspace& ws) {
    const std::size_t n = state.n.size();
    if (n != grid.size()) throw std::invalid_argument("rhs: field/grid size mismatch");
    const auto& kt = kernels::active();
    ws.p.resize(n);
    ws.q.resize(n - 1);
    ws.flux.resize(n - 1);
    ws.rhs.resize(n);
    pressure_into(state.n, law, ws.p);
    kt.face_diff(ws.p.data(), n - 1, grid.dx, ws.q.data());
    kt.upwind_flux(state.n.data(), ws.q.data(), n - 1, ws.flux.data());
    ws.g = growth_field(growth, ws.p, state.c);
    for (std::size_t k = 0; k < n; ++k) {
        const double right = k + 1 < n ? ws.flux[k] : 0.0;
        const double left = k > 0 ? ws.flux[k - 1] : 0.0;
        ws.rhs[k] = (right - left) / grid.dx + state.n[k] * ws.g[k];
    }
}

Field rhs(const SimState& state, const Grid1D& grid, const PressureLaw& law,
          const GrowthModel& growth) {
    RhsWorkspace ws;
    rhs_into(state, grid, law, growth, ws);
    return std::move(ws.rhs);
}

double stable_dt(std::span<const double> n, const Grid1D& grid, const PressureLaw& law,
                 const GrowthModel& growth, const std::optional<Field>& c, double c_cfl) {
    double pmax = 0.0;
    for (double v : n) pmax = std::max(pmax, law.pressure(v));
    double dt = std::numeric_limits<double>::infinity();
    if (pmax > 0.0) dt = c_cfl * grid.dx * grid.dx / (law.gamma() * pmax);
    Field p(n.size());
    pressure_into(n, law, p);
    const Field g = growth_field(growth, p, c);
    const double gmax = g.empty() ? 0.0 : kernels::active().max_abs(g.data(), g.size());
    if (gmax > 0.0) dt = std::min(dt, c_cfl / gmax);
    return dt;
}

SimState step_explicit(const SimState& state, double dt, const Grid1D& grid,
                       const PressureLaw& law, const GrowthModel& growth) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_explicit: dt must be positive");
    RhsWorkspace ws;
    rhs_into(state, grid, law, growth, ws);
    const auto n_h = homeostatic_density(growth, law);
    SimState next = state;
    next.t = state.t + dt;
    for (std::size_t k = 0; k < next.n.size(); ++k) {
        double v = state.n[k] + dt * ws.rhs[k];
        if (v < 0.0) {
            if (v < -kNegativeClip)
                throw StabilityError("step_explicit: density " + std::to_string(v) + " at node " +
                                     std::to_string(k) + "; dt too large");
            v = 0.0;
        }
        if (n_h && v > *n_h + kUpperSlack)
            throw StabilityError("step_explicit: density exceeds n_H at node " + std::to_string(k) +
                                 "; dt too large");
        next.n[k] = v;
    }
    return next;
}

double ab_monitor(const SimState& state, const Grid1D& grid, const PressureLaw& law,
                  const GrowthModel& growth) {
    Field p(state.n.size());
    pressure_into(state.n, law, p);
    const Field d2 = second_difference(p, grid);
    const Field g = growth_field(growth, p, state.c);
    double w = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k + 1 < p.size(); ++k) w = std::min(w, d2[k] + g[k]);
    return w;
}

}  // namespace pmfd
