#pragma once

#include <optional>

#include "pmfd/grid.hpp"
#include "pmfd/growth.hpp"
#include "pmfd/pressure_law.hpp"

namespace pmfd {

struct SimState {
    double t = 0.0;
    Field n;
    /// Nutrient concentration, present for nutrient-fed runs.
    std::optional<Field> c;
};

/// Growth rate at every node: G(p_i) for pressure-fed laws, G(c_i) for
/// nutrient-fed ones (c required), g0 for constant growth.
Field growth_field(const GrowthModel& growth, std::span<const double> p,
                   const std::optional<Field>& c);

/// n_H = (p_H / kappa)^(1/gamma) when the growth law has a homeostatic pressure.
std::optional<double> homeostatic_density(const GrowthModel& growth, const PressureLaw& law);

}  // namespace pmfd
