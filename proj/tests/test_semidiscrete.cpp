#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pmfd/errors.hpp"
#include "pmfd/semidiscrete.hpp"

using namespace pmfd;

namespace {

double mass(const Field& n, const Grid1D& g) {
    double s = 0.0;
    for (double v : n) s += v;
    return s * g.dx;
}

double bv(const Field& n, const Grid1D& g) {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < n.size(); ++k) s += std::abs(n[k + 1] - n[k]);
    return s * g.dx;
}

}  // namespace

TEST(Rhs, ZeroAndEquilibrium) {
    const Grid1D g = Grid1D::from_spacing(-1.0, 1.0, 0.1);
    const PressureLaw law(3.0);
    for (double v : rhs({0.0, Field(g.size(), 0.0)}, g, law, LinearPressure{1.0, 1.0})) EXPECT_EQ(v, 0.0);
    const LinearPressure growth{2.0, 0.8};
    const double n_h = law.density(0.8);
    for (double v : rhs({0.0, Field(g.size(), n_h)}, g, law, growth)) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(Rhs, SpikeStencil) {
    const Grid1D g(-1.0, 1.0, 1);
    const Field r = rhs({0.0, Field{0.0, 1.0, 0.0}}, g, PressureLaw(2.0), ConstantGrowth{0.0});
    EXPECT_EQ(r[0], 1.0);
    EXPECT_EQ(r[1], -2.0);
    EXPECT_EQ(r[2], 1.0);
}

TEST(Rhs, NutrientFedNeedsNutrient) {
    const Grid1D g(-1.0, 1.0, 2);
    EXPECT_THROW(rhs({0.0, Field(g.size(), 0.5)}, g, PressureLaw(2.0), NutrientLinear{}),
                 std::invalid_argument);
    SimState s{0.0, Field(g.size(), 0.5), Field(g.size(), 0.4)};
    const Field r = rhs(s, g, PressureLaw(2.0), NutrientLinear{});
    for (double v : r) EXPECT_NEAR(v, 0.5 * 0.4, 1e-15);
}

TEST(StepExplicit, Examples) {
    const Grid1D g(-1.0, 1.0, 1);
    const SimState s{0.0, Field{0.0, 1.0, 0.0}};
    const SimState next = step_explicit(s, 0.01, g, PressureLaw(2.0), ConstantGrowth{0.0});
    EXPECT_NEAR(next.n[0], 0.01, 1e-16);
    EXPECT_NEAR(next.n[1], 0.98, 1e-16);
    EXPECT_NEAR(next.n[2], 0.01, 1e-16);
    EXPECT_EQ(next.t, 0.01);

    const SimState zero{0.0, Field(3, 0.0)};
    EXPECT_EQ(step_explicit(zero, 0.5, g, PressureLaw(2.0), ConstantGrowth{0.0}).n, zero.n);
}

TEST(StepExplicit, TooLargeStepIsReported) {
    const Grid1D g(-1.0, 1.0, 1);
    const SimState s{0.0, Field{0.0, 1.0, 0.0}};
    EXPECT_THROW(step_explicit(s, 1.0, g, PressureLaw(2.0), ConstantGrowth{0.0}), StabilityError);
    EXPECT_THROW(step_explicit(s, -1.0, g, PressureLaw(2.0), ConstantGrowth{0.0}), std::invalid_argument);
}

TEST(StepExplicit, MassConservedWithoutGrowth) {
    const Grid1D g = Grid1D::from_spacing(-2.0, 2.0, 0.05);
    const PressureLaw law(3.0);
    SimState s{0.0, Field(g.size())};
    for (std::size_t k = 0; k < g.size(); ++k) s.n[k] = std::max(0.0, 1.0 - g.x(k) * g.x(k));
    const double m0 = mass(s.n, g);
    const double dt = stable_dt(s.n, g, law, ConstantGrowth{0.0});
    for (int i = 0; i < 100; ++i) s = step_explicit(s, dt, g, law, ConstantGrowth{0.0});
    EXPECT_NEAR(mass(s.n, g), m0, 1e-12 * m0);
}

TEST(StepExplicit, InvariantRegionAndGronwallBounds) {
    const Grid1D g = Grid1D::from_spacing(-3.0, 3.0, 0.05);
    const PressureLaw law(4.0);
    const LinearPressure growth{1.0, 1.0};
    const double n_h = law.density(1.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, n_h);
    SimState s{0.0, Field(g.size(), 0.0)};
    for (std::size_t k = 0; k < g.size(); ++k)
        if (std::abs(g.x(k)) < 1.5) s.n[k] = u(rng);
    const double m0 = mass(s.n, g), bv0 = bv(s.n, g);
    const double g0 = growth_eval(growth, 0.0);
    while (s.t < 0.2) {
        const double dt = stable_dt(s.n, g, law, growth);
        s = step_explicit(s, dt, g, law, growth);
        for (double v : s.n) {
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, n_h + 1e-10);
        }
        ASSERT_LE(mass(s.n, g), std::exp(g0 * s.t) * m0 + 1e-8);
        ASSERT_LE(bv(s.n, g), std::exp(g0 * s.t) * bv0 + 1e-8);
    }
}

TEST(AbMonitor, Examples) {
    const Grid1D g = Grid1D::from_spacing(-1.0, 1.0, 0.125);
    const PressureLaw law(3.0);
    const SimState flat{0.0, Field(g.size(), 1.0)};
    EXPECT_NEAR(ab_monitor(flat, g, law, LinearPressure{1.0, 1.0}), 0.0, 1e-15);

    const PressureLaw square(2.0);
    SimState quad{0.0, Field(g.size())};
    for (std::size_t k = 0; k < g.size(); ++k) quad.n[k] = std::abs(g.x(k));
    EXPECT_NEAR(ab_monitor(quad, g, square, ConstantGrowth{0.0}), 2.0, 1e-10);
}
