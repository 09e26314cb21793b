#include "pmfd/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pmfd/errors.hpp"

namespace pmfd {

namespace {

template <class F>
FrontRadius rk4(double r0, double t_end, double h, F rate) {
    if (!(r0 > 0.0)) throw DomainError("front radius: R0 must be positive");
    if (!(h > 0.0) || t_end < 0.0) throw std::invalid_argument("front radius: bad time grid");
    FrontRadius out;
    const auto steps = static_cast<long>(std::ceil(t_end / h - 1e-9));
    out.t.reserve(static_cast<std::size_t>(steps) + 1);
    out.r.reserve(static_cast<std::size_t>(steps) + 1);
    double t = 0.0;
    double r = r0;
    out.t.push_back(t);
    out.r.push_back(r);
    for (long k = 0; k < steps; ++k) {
        const double t_next = std::min(static_cast<double>(k + 1) * h, t_end);
        const double dt = t_next - t;
        const double k1 = rate(r);
        const double k2 = rate(r + 0.5 * dt * k1);
        const double k3 = rate(r + 0.5 * dt * k2);
        const double k4 = rate(r + dt * k3);
        r += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t_next;
        out.t.push_back(t);
        out.r.push_back(r);
    }
    return out;
}

}  // namespace

double barenblatt(double x, double s, double gamma, double c) {
    if (!(s > 0.0)) throw DomainError("barenblatt: time must be positive");
    const double beta = 1.0 / (gamma + 2.0);
    const double sb = std::pow(s, beta);
    const double inner = c - beta * gamma / (2.0 * (gamma + 1.0)) * x * x / (sb * sb);
    if (inner <= 0.0) return 0.0;
    return std::pow(inner, 1.0 / gamma) / sb;
}

double barenblatt_radius(double s, double gamma, double c) {
    const double beta = 1.0 / (gamma + 2.0);
    return std::pow(s, beta) * std::sqrt(2.0 * (gamma + 1.0) * c / (beta * gamma));
}

double FrontRadius::at(double time) const {
    if (t.empty()) throw std::logic_error("FrontRadius: no samples");
    if (time <= t.front()) return r.front();
    if (time >= t.back()) return r.back();
    const auto it = std::upper_bound(t.begin(), t.end(), time);
    const std::size_t k = static_cast<std::size_t>(it - t.begin());
    const double w = (time - t[k - 1]) / (t[k] - t[k - 1]);
    return (1.0 - w) * r[k - 1] + w * r[k];
}

FrontRadius integrate_front_vitro(double r0, double c_b, double t_end, double h) {
    return rk4(r0, t_end, h, [c_b](double r) { return c_b * std::tanh(r); });
}

FrontRadius integrate_front_vivo(double r0, double c_b, double g0, double t_end, double h) {
    // sinh(R) e^-R written as (1 - e^-2R)/2 to stay finite for large R.
    return rk4(r0, t_end, h,
               [c_b, g0](double r) { return c_b * g0 * 0.5 * (1.0 - std::exp(-2.0 * r)); });
}

NutrientPressure vitro_exact(double x, double r, double c_b) {
    if (!(r > 0.0)) throw DomainError("vitro_exact: radius must be positive");
    if (std::abs(x) >= r) return {c_b, 0.0};
    const double c = c_b * std::cosh(x) / std::cosh(r);
    return {c, c_b - c};
}

NutrientPressure vivo_exact(double x, double r, double c_b, double g0) {
    if (!(r > 0.0)) throw DomainError("vivo_exact: radius must be positive");
    const double ax = std::abs(x);
    if (ax >= r) return {c_b - c_b * std::sinh(r) * std::exp(-ax), 0.0};
    const double scale = c_b * std::exp(-r);
    return {scale * std::cosh(x), g0 * scale * (std::cosh(r) - std::cosh(x))};
}

}  // namespace pmfd
