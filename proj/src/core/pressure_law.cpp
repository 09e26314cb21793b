#include "pmfd/pressure_law.hpp"

#include <cmath>
#include <string>

#include "pmfd/errors.hpp"
#include "pmfd/kernels.hpp"

namespace pmfd {

namespace {

constexpr unsigned kMaxIntegerExponent = 256;

std::optional<unsigned> integral_exponent(double gamma) {
    if (gamma >= 1.0 && gamma <= kMaxIntegerExponent && std::floor(gamma) == gamma)
        return static_cast<unsigned>(gamma);
    return std::nullopt;
}

}  // namespace

PressureLaw::PressureLaw(double gamma, double kappa) : PressureLaw(gamma, kappa, false) {}

PressureLaw::PressureLaw(double gamma, double kappa, bool allow_linear)
    : gamma_(gamma), kappa_(kappa), int_exp_(integral_exponent(gamma)) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw DomainError("pressure law: kappa must be positive, got " + std::to_string(kappa));
    if (allow_linear ? !(gamma >= 1.0) : !(gamma > 1.0))
        throw DomainError("pressure law: gamma must exceed 1, got " + std::to_string(gamma));
}

PressureLaw PressureLaw::linear(double kappa) { return PressureLaw(1.0, kappa, true); }

double PressureLaw::pressure(double n) const noexcept {
    return kappa_ * (int_exp_ ? kernels::ipow(n, *int_exp_) : std::pow(n, gamma_));
}

double PressureLaw::power_minus_one(double n) const noexcept {
    if (int_exp_) return kernels::ipow(n, *int_exp_ - 1);
    return std::pow(n, gamma_ - 1.0);
}

double PressureLaw::dpressure(double n) const noexcept {
    return kappa_ * gamma_ * power_minus_one(n);
}

double PressureLaw::density(double p) const noexcept {
    if (p <= 0.0) return 0.0;
    return std::pow(p / kappa_, 1.0 / gamma_);
}

void pressure_into(std::span<const double> n, const PressureLaw& law, std::span<double> p) {
    if (auto e = law.integer_exponent()) {
        kernels::active().int_pow(n.data(), n.size(), *e, law.kappa(), p.data());
        return;
    }
    for (std::size_t i = 0; i < n.size(); ++i) p[i] = law.pressure(n[i]);
}

Field pressure_from_density(std::span<const double> n, const PressureLaw& law) {
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 0.0)
            throw DomainError("pressure_from_density: negative density " + std::to_string(n[i]) +
                                  " at node " + std::to_string(i),
                              i);
    }
    Field p(n.size());
    pressure_into(n, law, p);
    return p;
}

}  // namespace pmfd
