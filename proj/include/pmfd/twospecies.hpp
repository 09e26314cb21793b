#pragma once

#include <optional>
#include <utility>

#include "pmfd/implicit1d.hpp"
#include "pmfd/nutrient.hpp"

namespace pmfd {

/// Proliferating (n_p) and necrotic (n_d) cells sharing the pressure of the
/// total density n_p + n_d.
struct TwoSpeciesState {
    double t = 0.0;
    Field n_p;
    Field n_d;
    /// Nutrient used for the step that produced this state.
    std::optional<Field> c;
};

struct TwoSpeciesProblem {
    Grid1D grid;
    PressureLaw law;
    /// Nutrient-fed or constant growth.
    GrowthModel growth;
    NutrientModel nutrient;
    ImplicitStepParams params;
};

/// Right-hand sides of the semi-discrete two-species system:
/// proliferating cells grow at G, dead cells gain n_p |G|_- where
/// |G|_- = max(-G, 0). `g` holds G per node.
std::pair<Field, Field> twospecies_rhs(std::span<const double> n_p, std::span<const double> n_d,
                                       std::span<const double> g, const Grid1D& grid,
                                       const PressureLaw& law);

/// Implicit step of both species with the growth rates `g` frozen per node.
/// Newton on the coupled unknowns with a 2x2 block-tridiagonal Jacobian; if
/// Newton fails the step is split in halves (up to 6 levels).
std::pair<Field, Field> solve_twospecies_step(std::span<const double> n_p,
                                              std::span<const double> n_d,
                                              std::span<const double> g,
                                              const TwoSpeciesProblem& problem);

/// Solve the nutrient from the start-of-step total density, then take one
/// implicit step of size params.dt.
TwoSpeciesState step_twospecies(const TwoSpeciesState& state, const TwoSpeciesProblem& problem);

/// Growth rate per node from the nutrient (or g0 for constant growth).
Field twospecies_growth(const TwoSpeciesProblem& problem, const std::optional<Field>& c,
                        std::size_t size);

}  // namespace pmfd
