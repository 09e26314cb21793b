#include "pmfd/growth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmfd/errors.hpp"

namespace pmfd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

PressureGeneric::PressureGeneric(std::function<double(double)> g, std::function<double(double)> dg,
                                 double p_h, double alpha)
    : g_(std::move(g)), dg_(std::move(dg)), p_h_(p_h), alpha_(alpha) {
    if (!(p_h > 0.0) || !(alpha > 0.0))
        throw DomainError("growth law: p_h and alpha must be positive");
    g0_ = g_(0.0);
    if (!std::isfinite(g0_)) throw DomainError("growth law: G(0) is not finite");
    if (std::abs(g_(p_h)) > 1e-12 * std::max(1.0, std::abs(g0_)))
        throw DomainError("growth law: G(p_h) must vanish");
    constexpr int samples = 256;
    for (int k = 0; k <= samples; ++k) {
        const double p = 1.5 * p_h * k / samples;
        if (dg_(p) > -alpha)
            throw DomainError("growth law: slope bound G' <= -alpha violated at p = " +
                              std::to_string(p));
    }
}

double growth_eval(const GrowthModel& model, double v) {
    return std::visit(overloaded{
                          [v](const LinearPressure& g) { return g.alpha * (g.p_h - v); },
                          [](const ConstantGrowth& g) { return g.g0; },
                          [v](const NutrientLinear&) { return v; },
                          [v](const NutrientPiecewise& g) {
                              return v < g.c_threshold ? g.g_low : g.g_high;
                          },
                          [v](const PressureGeneric& g) { return g(v); },
                      },
                      model);
}

double growth_derivative(const GrowthModel& model, double v) {
    return std::visit(overloaded{
                          [](const LinearPressure& g) { return -g.alpha; },
                          [v](const PressureGeneric& g) { return g.derivative(v); },
                          [](const auto&) { return 0.0; },
                      },
                      model);
}

bool is_nutrient_fed(const GrowthModel& model) {
    return std::holds_alternative<NutrientLinear>(model) ||
           std::holds_alternative<NutrientPiecewise>(model);
}

std::optional<double> homeostatic_pressure(const GrowthModel& model) {
    if (auto* g = std::get_if<LinearPressure>(&model)) return g->p_h;
    if (auto* g = std::get_if<PressureGeneric>(&model)) return g->p_h();
    return std::nullopt;
}

double growth_sup(const GrowthModel& model) {
    return std::visit(overloaded{
                          [](const LinearPressure& g) { return g.alpha * g.p_h; },
                          [](const ConstantGrowth& g) { return g.g0; },
                          [](const NutrientLinear& g) { return g.c_b; },
                          [](const NutrientPiecewise& g) { return std::max(g.g_low, g.g_high); },
                          [](const PressureGeneric& g) { return g.g_at_zero(); },
                      },
                      model);
}

}  // namespace pmfd
