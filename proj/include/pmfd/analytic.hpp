#pragma once

#include <vector>

namespace pmfd {

/// Barenblatt profile of dn/dt = d/dx(n dp/dx), p = ((gamma+1)/gamma) n^gamma,
/// at absolute time s > 0:
///   n = s^-b (C - b gamma/(2(gamma+1)) x^2 / s^(2b))_+^(1/gamma), b = 1/(gamma+2).
/// A run started from the profile at s = t0 compares against s = t + t0.
double barenblatt(double x, double s, double gamma, double c);

/// Half-width of the Barenblatt support at time s.
double barenblatt_radius(double s, double gamma, double c);

/// Samples R(t_k) of a front-radius ODE on a uniform time grid (the last
/// interval may be shorter).
struct FrontRadius {
    std::vector<double> t;
    std::vector<double> r;

    /// Linear interpolation between samples; clamps outside the sampled range.
    double at(double time) const;
};

inline constexpr double kFrontStep = 1e-4;

/// R' = c_b tanh(R), classical RK4.
FrontRadius integrate_front_vitro(double r0, double c_b, double t_end, double h = kFrontStep);

/// R' = c_b g0 sinh(R) e^-R, classical RK4.
FrontRadius integrate_front_vivo(double r0, double c_b, double g0, double t_end,
                                 double h = kFrontStep);

struct NutrientPressure {
    double c;
    double p;
};

/// Quasi-static in vitro solution for a tumour occupying [-R, R].
NutrientPressure vitro_exact(double x, double r, double c_b);

/// Quasi-static in vivo solution for a tumour occupying [-R, R].
NutrientPressure vivo_exact(double x, double r, double c_b, double g0 = 1.0);

}  // namespace pmfd
