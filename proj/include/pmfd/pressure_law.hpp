#pragma once

#include <optional>
#include <span>

#include "pmfd/grid.hpp"
#include "pmfd/kernels.hpp"

namespace pmfd {

/// Law of state p = kappa * n^gamma.
///
/// gamma must exceed 1 except for the Aronson-Benilan monitor path, which
/// constructs the linear law through `linear()`.
class PressureLaw {
public:
    explicit PressureLaw(double gamma, double kappa = 1.0);

    /// gamma = 1 law, p = kappa * n. Only meaningful for the AB monitor runs.
    static PressureLaw linear(double kappa = 1.0);

    double gamma() const noexcept { return gamma_; }
    double kappa() const noexcept { return kappa_; }

    /// Exponent as an unsigned integer when gamma is integral and small enough
    /// for repeated squaring; integral exponents use the SIMD power kernel.
    std::optional<unsigned> integer_exponent() const noexcept { return int_exp_; }

    double pressure(double n) const noexcept;
    /// dp/dn = kappa * gamma * n^(gamma-1).
    double dpressure(double n) const noexcept;
    /// n^(gamma-1), computed without dividing by n.
    double power_minus_one(double n) const noexcept;
    /// Inverse law n = (p / kappa)^(1/gamma).
    double density(double p) const noexcept;

private:
    PressureLaw(double gamma, double kappa, bool allow_linear);

    double gamma_;
    double kappa_;
    std::optional<unsigned> int_exp_;
};

/// p_i = kappa * n_i^gamma. Throws DomainError naming the first negative node.
Field pressure_from_density(std::span<const double> n, const PressureLaw& law);

/// Same as above into caller storage; no sign check.
void pressure_into(std::span<const double> n, const PressureLaw& law, std::span<double> p);

}  // namespace pmfd
