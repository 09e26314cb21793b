#pragma once

#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "pmfd/grid.hpp"

namespace pmfd {

/// Nutrient consumption rate psi(n) >= 0 with psi(0) = 0.
using ConsumptionLaw = std::function<double(double)>;

inline double linear_consumption(double n) { return n; }

/// Tumour bathed in a liquid at concentration c_b: -c'' + psi(n) c = 0 in the
/// support, c = c_b outside.
struct InVitro {
    double c_b = 1.0;
    ConsumptionLaw psi = linear_consumption;
};

/// Vasculature outside the tumour: -c'' + psi(n) c = (c_b - c) 1{n = 0}.
struct InVivo {
    double c_b = 1.0;
    ConsumptionLaw psi = linear_consumption;
};

using NutrientModel = std::variant<InVitro, InVivo>;

double nutrient_level(const NutrientModel& model);

struct SupportMask {
    std::vector<char> inside;
    /// Maximal runs of inside nodes as half-open index ranges [first, last).
    std::vector<std::pair<std::size_t, std::size_t>> components;
};

SupportMask support_mask(std::span<const double> n, double tol_supp);

/// Support threshold 1e-8 * scale, with scale = n_H when known, else max n.
double support_tolerance(std::span<const double> n, double scale = 0.0);

/// Each support component is solved with Dirichlet c_b at its two neighbour
/// nodes (zero flux where the component touches the domain edge).
Field solve_vitro(std::span<const double> n, const InVitro& model, const Grid1D& grid,
                  double tol_supp);

/// One solve over the whole domain with Dirichlet c_b at both end nodes.
Field solve_vivo(std::span<const double> n, const InVivo& model, const Grid1D& grid,
                 double tol_supp);

Field solve_nutrient(std::span<const double> n, const NutrientModel& model, const Grid1D& grid,
                     double tol_supp);

}  // namespace pmfd
