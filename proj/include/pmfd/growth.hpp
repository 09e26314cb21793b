#pragma once

#include <functional>
#include <optional>
#include <variant>

namespace pmfd {

/// G(p) = alpha * (p_h - p).
struct LinearPressure {
    double alpha = 1.0;
    double p_h = 1.0;
};

/// G = g0, independent of the state.
struct ConstantGrowth {
    double g0 = 0.0;
};

/// G(c) = c, with the far-field nutrient level c_b as its supremum on [0, c_b].
struct NutrientLinear {
    double c_b = 1.0;
};

/// G(c) = g_low for c < c_threshold, g_high otherwise.
struct NutrientPiecewise {
    double g_low = 0.0;
    double g_high = 0.0;
    double c_threshold = 0.0;
};

/// User-supplied decreasing pressure law. Construction checks the
/// slope bound G' <= -alpha and G(p_h) = 0 on a sample grid over [0, p_h].
class PressureGeneric {
public:
    PressureGeneric(std::function<double(double)> g, std::function<double(double)> dg, double p_h,
                    double alpha);

    double operator()(double p) const { return g_(p); }
    double derivative(double p) const { return dg_(p); }
    double p_h() const noexcept { return p_h_; }
    double alpha() const noexcept { return alpha_; }
    double g_at_zero() const noexcept { return g0_; }

private:
    std::function<double(double)> g_;
    std::function<double(double)> dg_;
    double p_h_;
    double alpha_;
    double g0_;
};

using GrowthModel =
    std::variant<LinearPressure, ConstantGrowth, NutrientLinear, NutrientPiecewise, PressureGeneric>;

/// G at a pressure (pressure-fed and constant laws) or at a nutrient level.
double growth_eval(const GrowthModel& model, double p_or_c);

/// dG/dp for pressure-fed laws; 0 for nutrient-fed and constant laws (the
/// nutrient is frozen during a density step).
double growth_derivative(const GrowthModel& model, double p_or_c);

bool is_nutrient_fed(const GrowthModel& model);

/// Homeostatic pressure p_H, when the law has one.
std::optional<double> homeostatic_pressure(const GrowthModel& model);

/// Upper bound of G over every admissible argument. Plays the role of G(0)
/// in the time-step restriction dt < 1/G(0).
double growth_sup(const GrowthModel& model);

}  // namespace pmfd
