#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pmfd/nutrient.hpp"

using namespace pmfd;

namespace {

Field indicator(const Grid1D& g, double r) {
    Field n(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k)
        if (std::abs(g.x(k)) < r - 1e-12) n[k] = 1.0;
    return n;
}

// Max-norm distance to the closed-form in vitro profile for a patch [-1, 1]
// whose edges sit on nodes.
double vitro_error(double dx) {
    const Grid1D g = Grid1D::from_spacing(-3.0, 3.0, dx);
    const Field c = solve_vitro(indicator(g, 1.0), InVitro{}, g, 1e-8);
    double err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = g.x(k);
        const double exact = std::abs(x) < 1.0 ? std::cosh(x) / std::cosh(1.0) : 1.0;
        err = std::max(err, std::abs(c[k] - exact));
    }
    return err;
}

// Same for in vivo with the patch edge on a cell face, R = 1 + dx/2.
double vivo_error(double dx) {
    const Grid1D g = Grid1D::from_spacing(-15.0, 15.0, dx);
    const double r = 1.0 + 0.5 * dx;
    const Field c = solve_vivo(indicator(g, r), InVivo{}, g, 1e-8);
    double err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = g.x(k);
        const double exact =
            std::abs(x) < r ? std::exp(-r) * std::cosh(x) : 1.0 - std::sinh(r) * std::exp(-std::abs(x));
        err = std::max(err, std::abs(c[k] - exact));
    }
    return err;
}

}  // namespace

TEST(SupportMask, Examples) {
    const SupportMask empty = support_mask(Field(7, 0.0), 1e-8);
    for (char v : empty.inside) EXPECT_FALSE(v);
    EXPECT_TRUE(empty.components.empty());

    const Grid1D g(-2.0, 2.0, 4);
    const Field n = indicator(g, 1.1);
    const SupportMask m = support_mask(n, 1e-8);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(static_cast<bool>(m.inside[k]), n[k] == 1.0);
    ASSERT_EQ(m.components.size(), 1u);
    EXPECT_EQ(m.components[0], std::make_pair(std::size_t{2}, std::size_t{7}));

    const Field hat{0.0, 0.1, 0.2, 0.3, 0.2, 0.1, 0.0};
    const SupportMask h = support_mask(hat, 0.15);
    EXPECT_EQ(h.inside, (std::vector<char>{0, 0, 1, 1, 1, 0, 0}));
    const SupportMask at = support_mask(hat, 0.2);
    EXPECT_EQ(at.inside, (std::vector<char>{0, 0, 0, 1, 0, 0, 0}));
    EXPECT_THROW(support_mask(hat, -1.0), std::invalid_argument);
}

TEST(SupportMask, Tolerance) {
    EXPECT_DOUBLE_EQ(support_tolerance(Field{0.2, 0.5}), 0.5e-8);
    EXPECT_DOUBLE_EQ(support_tolerance(Field{0.2, 0.5}, 2.0), 2e-8);
}

TEST(Vitro, EmptyAndSeparatePatches) {
    const Grid1D g = Grid1D::from_spacing(-3.0, 3.0, 0.05);
    for (double v : solve_vitro(Field(g.size(), 0.0), InVitro{2.0}, g, 1e-8)) EXPECT_EQ(v, 2.0);

    Field n(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k)
        if (std::abs(g.x(k) - 1.5) < 0.5 || std::abs(g.x(k) + 1.5) < 0.5) n[k] = 1.0;
    const Field c = solve_vitro(n, InVitro{}, g, 1e-8);
    for (std::size_t k = 0; k < g.size(); ++k)
        if (n[k] == 0.0) {
            EXPECT_EQ(c[k], 1.0);
        }

    // Each patch alone gives the same values on its own nodes.
    Field right = n;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (g.x(k) < 0) right[k] = 0.0;
    const Field c_right = solve_vitro(right, InVitro{}, g, 1e-8);
    for (std::size_t k = 0; k < g.size(); ++k)
        if (g.x(k) > 0) {
            EXPECT_EQ(c[k], c_right[k]);
        }
}

TEST(Vitro, PatchAtDomainEdgeUsesZeroFlux) {
    const Grid1D g(0.0, 1.0, 5);
    const Field c = solve_vitro(Field{1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0}, InVitro{}, g, 1e-8);
    EXPECT_EQ(c[5], 1.0);
    EXPECT_GT(c[1], c[0]);
    EXPECT_NEAR(c[0], c[1] - g.dx * g.dx * c[0], 1e-15);
}

TEST(Vitro, SecondOrderAgainstClosedForm) {
    const double e1 = vitro_error(0.05), e2 = vitro_error(0.025), e3 = vitro_error(0.0125);
    EXPECT_LT(e3, 1e-3);
    EXPECT_GE(e1 / e2, 3.5);
    EXPECT_LE(e1 / e2, 4.5);
    EXPECT_GE(e2 / e3, 3.5);
    EXPECT_LE(e2 / e3, 4.5);
}

TEST(Vivo, EmptyAndSymmetry) {
    const Grid1D g = Grid1D::from_spacing(-5.0, 5.0, 0.05);
    for (double v : solve_vivo(Field(g.size(), 0.0), InVivo{1.5}, g, 1e-8)) EXPECT_NEAR(v, 1.5, 1e-12);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Field n(g.size(), 0.0);
    const std::size_t mid = g.size() / 2;
    for (std::size_t k = 0; k <= 30; ++k) n[mid + k] = n[mid - k] = u(rng);
    const Field c = solve_vivo(n, InVivo{}, g, 1e-8);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(c[k], c[g.size() - 1 - k], 1e-12);
}

TEST(Vivo, SecondOrderAgainstClosedForm) {
    const double e1 = vivo_error(0.05), e2 = vivo_error(0.025), e3 = vivo_error(0.0125);
    EXPECT_LT(e3, 1e-3);
    EXPECT_GE(e1 / e2, 3.5);
    EXPECT_LE(e1 / e2, 4.5);
    EXPECT_GE(e2 / e3, 3.5);
    EXPECT_LE(e2 / e3, 4.5);
}

TEST(Nutrient, MaximumPrincipleAndConsumptionComparison) {
    const Grid1D g = Grid1D::from_spacing(-4.0, 4.0, 0.05);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Field n(g.size(), 0.0);
        const double a = -3.0 + 2.0 * u(rng), b = a + 1.0 + 3.0 * u(rng);
        for (std::size_t k = 0; k < g.size(); ++k)
            if (g.x(k) > a && g.x(k) < b) n[k] = u(rng);
        const double c_b = 0.5 + u(rng);
        const ConsumptionLaw weak = linear_consumption;
        const ConsumptionLaw strong = [](double v) { return 2.0 * v + v * v; };
        for (const bool vivo : {false, true}) {
            const NutrientModel lo = vivo ? NutrientModel{InVivo{c_b, weak}} : NutrientModel{InVitro{c_b, weak}};
            const NutrientModel hi = vivo ? NutrientModel{InVivo{c_b, strong}} : NutrientModel{InVitro{c_b, strong}};
            const Field c_lo = solve_nutrient(n, lo, g, 1e-8);
            const Field c_hi = solve_nutrient(n, hi, g, 1e-8);
            for (std::size_t k = 0; k < g.size(); ++k) {
                EXPECT_GT(c_lo[k], 0.0);
                EXPECT_LE(c_lo[k], c_b + 1e-14);
                EXPECT_LE(c_hi[k], c_lo[k] + 1e-14);
            }
        }
    }
}

TEST(Nutrient, Level) {
    EXPECT_EQ(nutrient_level(InVitro{0.7}), 0.7);
    EXPECT_EQ(nutrient_level(InVivo{1.3}), 1.3);
}
