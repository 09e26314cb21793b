#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pmfd/implicit1d.hpp"
#include "pmfd/semidiscrete.hpp"
#include "pmfd/twospecies.hpp"

using namespace pmfd;

namespace {

TwoSpeciesProblem make_problem(const Grid1D& g, double gamma, double dt, GrowthModel growth) {
    TwoSpeciesProblem pb{g, PressureLaw(gamma), growth, InVitro{}, {}};
    pb.params.dt = dt;
    return pb;
}

double total(const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] + b[k];
    return s;
}

Field bump(const Grid1D& g, double height, double width) {
    Field n(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double u = g.x(k) / width;
        n[k] = std::abs(u) < 1.0 ? height * (1.0 - u * u) : 0.0;
    }
    return n;
}

}  // namespace

TEST(TwoSpecies, ZeroIsFixed) {
    const Grid1D g(-1.0, 1.0, 8);
    const Field zero(g.size(), 0.0), rate(g.size(), -3.0);
    const auto [p, d] = solve_twospecies_step(zero, zero, rate, make_problem(g, 3.0, 0.01, ConstantGrowth{-3.0}));
    EXPECT_EQ(p, zero);
    EXPECT_EQ(d, zero);
}

TEST(TwoSpecies, DeadCellsAloneOnlyMove) {
    const Grid1D g = Grid1D::from_spacing(-2.0, 2.0, 0.05);
    const auto pb = make_problem(g, 4.0, 0.01, ConstantGrowth{-2.0});
    const Field zero(g.size(), 0.0), rate(g.size(), -2.0);
    Field d = bump(g, 0.9, 1.0);
    const double m0 = total(zero, d);
    for (int k = 0; k < 10; ++k) d = solve_twospecies_step(zero, d, rate, pb).second;
    EXPECT_NEAR(total(zero, d), m0, 1e-12 * m0);
}

TEST(TwoSpecies, NegativeGrowthConservesTotalMass) {
    const Grid1D g = Grid1D::from_spacing(-2.0, 2.0, 0.025);
    const auto pb = make_problem(g, 80.0, 1e-4, ConstantGrowth{-15.0});
    const Field rate(g.size(), -15.0);
    Field p = bump(g, 0.95, 1.0), d = bump(g, 0.03, 0.5);
    const double m0 = total(p, d) * g.dx;
    for (int k = 0; k < 10; ++k) {
        std::tie(p, d) = solve_twospecies_step(p, d, rate, pb);
        for (std::size_t i = 0; i < p.size(); ++i) {
            ASSERT_GE(p[i], 0.0);
            ASSERT_GE(d[i], 0.0);
        }
    }
    EXPECT_NEAR(total(p, d) * g.dx, m0, 1e-10);
}

TEST(TwoSpecies, FlatMixtureHasClosedFormStep) {
    const Grid1D g(-1.0, 1.0, 6);
    const double dt = 0.01;
    const auto pb = make_problem(g, 5.0, dt, ConstantGrowth{-15.0});
    const Field rate(g.size(), -15.0);
    Field p(g.size(), 0.3), d(g.size(), 0.2);
    for (int k = 0; k < 5; ++k) {
        const auto [p1, d1] = solve_twospecies_step(p, d, rate, pb);
        const double p_exact = p[0] / (1.0 + 15.0 * dt);
        for (std::size_t i = 0; i < p.size(); ++i) {
            EXPECT_NEAR(p1[i], p_exact, 1e-13);
            EXPECT_NEAR(d1[i], d[0] + 15.0 * dt * p_exact, 1e-13);
            EXPECT_GE(d1[i], d[i]);
        }
        p = p1;
        d = d1;
    }
}

TEST(TwoSpecies, ReducesToSingleSpeciesWithoutDeath) {
    const Grid1D g = Grid1D::from_spacing(-3.0, 3.0, 0.05);
    const double dt = 0.005;
    const auto pb = make_problem(g, 6.0, dt, ConstantGrowth{1.0});
    ImplicitProblem single{g, PressureLaw(6.0), ConstantGrowth{1.0}, {}};
    single.params.dt = dt;
    const Field rate(g.size(), 1.0);
    Field p = bump(g, 0.8, 1.2), d(g.size(), 0.0), n = p;
    for (int k = 0; k < 20; ++k) {
        std::tie(p, d) = solve_twospecies_step(p, d, rate, pb);
        n = solve_step(n, single);
        for (std::size_t i = 0; i < p.size(); ++i) {
            ASSERT_EQ(d[i], 0.0);
            ASSERT_NEAR(p[i], n[i], 1e-10);
        }
    }
}

TEST(TwoSpecies, RhsReducesToSingleSpecies) {
    const Grid1D g = Grid1D::from_spacing(-2.0, 2.0, 0.1);
    const PressureLaw law(3.0);
    const Field p = bump(g, 0.9, 1.5), d(g.size(), 0.0), rate(g.size(), 0.7);
    const auto [rp, rd] = twospecies_rhs(p, d, rate, g, law);
    const Field ref = rhs({0.0, p, std::nullopt}, g, law, ConstantGrowth{0.7});
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_NEAR(rp[i], ref[i], 1e-13);
        EXPECT_EQ(rd[i], 0.0);
    }
}

TEST(TwoSpecies, ImplicitStepMatchesFineExplicitIntegration) {
    const Grid1D g = Grid1D::from_spacing(-2.0, 2.0, 0.1);
    const PressureLaw law(3.0);
    Field rate(g.size());
    for (std::size_t i = 0; i < rate.size(); ++i) rate[i] = std::abs(g.x(i)) < 0.5 ? -4.0 : 2.0;

    const auto pb = make_problem(g, 3.0, 1e-5, ConstantGrowth{0.0});
    Field p = bump(g, 0.7, 1.5), d = bump(g, 0.1, 0.8);
    Field ep = p, ed = d;
    for (int k = 0; k < 2000; ++k) std::tie(p, d) = solve_twospecies_step(p, d, rate, pb);

    const double h = 1e-6;
    for (int k = 0; k < 20000; ++k) {
        const auto [rp, rd] = twospecies_rhs(ep, ed, rate, g, law);
        for (std::size_t i = 0; i < ep.size(); ++i) {
            ep[i] += h * rp[i];
            ed[i] += h * rd[i];
        }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_NEAR(p[i], ep[i], 1e-4);
        EXPECT_NEAR(d[i], ed[i], 1e-4);
    }
}

TEST(TwoSpecies, StepSolvesNutrientFromTotalDensity) {
    const Grid1D g = Grid1D::from_spacing(-3.0, 3.0, 0.05);
    auto pb = make_problem(g, 20.0, 1e-3, NutrientPiecewise{-15.0, 12.0, 0.4});
    TwoSpeciesState s{0.0, bump(g, 0.9, 1.5), Field(g.size(), 0.0), std::nullopt};
    const TwoSpeciesState next = step_twospecies(s, pb);
    ASSERT_TRUE(next.c.has_value());
    EXPECT_NEAR(next.t, 1e-3, 1e-16);
    const Field c = solve_nutrient(s.n_p, pb.nutrient, g, support_tolerance(s.n_p));
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ((*next.c)[i], c[i]);
    const Field rate = twospecies_growth(pb, c, g.size());
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(rate[i], c[i] < 0.4 ? -15.0 : 12.0);
}
