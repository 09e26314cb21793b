#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pmfd/errors.hpp"
#include "pmfd/experiments.hpp"
#include "pmfd/implicit1d.hpp"
#include "pmfd/scheme2d.hpp"

using namespace pmfd;

namespace {

Problem2D make_problem(double half, double dx, double gamma, double dt) {
    Problem2D pb{Grid2D(half, half, dx), PressureLaw(gamma), LinearPressure{1.0, 1.0}, {}};
    pb.params.dt = dt;
    return pb;
}

Field radial(const Grid2D& g, double inner, double outer, double height) {
    Field n(g.size(), 0.0);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const double r = std::hypot(g.x(i), g.y(j));
            if (r > inner && r < outer) n[g.index(i, j)] = height * std::sin(std::numbers::pi * (r - inner) / (outer - inner));
        }
    return n;
}

// Largest deviation between f and its image under each of the eight
// symmetries of the square grid.
double dihedral_defect(const Field& f, const Grid2D& g) {
    const std::size_t n = g.nx(), last = n - 1;
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double v = f[g.index(i, j)];
            const std::size_t images[8][2] = {{i, j},        {last - i, j}, {i, last - j}, {last - i, last - j},
                                              {j, i},        {last - j, i}, {j, last - i}, {last - j, last - i}};
            for (const auto& im : images) worst = std::max(worst, std::abs(v - f[g.index(im[0], im[1])]));
        }
    return worst;
}

double sum(const Field& f) {
    double s = 0.0;
    for (double v : f) s += v;
    return s;
}

}  // namespace

TEST(Residual2D, ZeroAndSymmetry) {
    const Problem2D pb = make_problem(1.0, 0.1, 3.0, 0.01);
    const Field zero(pb.grid.size(), 0.0);
    for (double v : residual2d(zero, zero, pb)) EXPECT_EQ(v, 0.0);
    const Field a = radial(pb.grid, 0.2, 0.9, 0.9), b = radial(pb.grid, 0.1, 0.8, 0.7);
    EXPECT_LT(dihedral_defect(residual2d(a, b, pb), pb.grid), 1e-14);
}

TEST(Residual2D, ExtrudedMatchesOneDimensional) {
    const Problem2D pb = make_problem(1.0, 0.05, 4.0, 0.01);
    const Grid1D& gx = pb.grid.x_axis;
    ImplicitProblem one{gx, pb.law, pb.growth, pb.params};
    Field next1(gx.size()), curr1(gx.size());
    for (std::size_t i = 0; i < gx.size(); ++i) {
        next1[i] = 0.9 * std::exp(-4.0 * gx.x(i) * gx.x(i));
        curr1[i] = 0.8 * std::exp(-5.0 * gx.x(i) * gx.x(i));
    }
    Field next(pb.grid.size()), curr(pb.grid.size());
    for (std::size_t j = 0; j < pb.grid.ny(); ++j)
        for (std::size_t i = 0; i < pb.grid.nx(); ++i) {
            next[pb.grid.index(i, j)] = next1[i];
            curr[pb.grid.index(i, j)] = curr1[i];
        }
    const Field r1 = residual(next1, curr1, one);
    const Field r2 = residual2d(next, curr, pb);
    for (std::size_t j = 0; j < pb.grid.ny(); ++j)
        for (std::size_t i = 0; i < pb.grid.nx(); ++i) ASSERT_EQ(r2[pb.grid.index(i, j)], r1[i]);
}

TEST(Step2D, ZeroIsFixed) {
    const Problem2D pb = make_problem(1.0, 0.1, 3.0, 0.01);
    const Field zero(pb.grid.size(), 0.0);
    EXPECT_EQ(step2d(zero, pb), zero);
}

TEST(Step2D, ExtrudedMatchesOneDimensionalNewton) {
    const Problem2D pb = make_problem(1.0, 0.05, 6.0, 0.005);
    const Grid1D& gx = pb.grid.x_axis;
    ImplicitProblem one{gx, pb.law, pb.growth, pb.params};
    Field curr1(gx.size());
    for (std::size_t i = 0; i < gx.size(); ++i) curr1[i] = std::max(0.0, 0.95 * (1.0 - 2.0 * gx.x(i) * gx.x(i)));
    Field curr(pb.grid.size());
    for (std::size_t j = 0; j < pb.grid.ny(); ++j)
        for (std::size_t i = 0; i < pb.grid.nx(); ++i) curr[pb.grid.index(i, j)] = curr1[i];
    const Field n1 = solve_step_newton(curr1, one);
    const Field n2 = step2d(curr, pb);
    for (std::size_t j = 0; j < pb.grid.ny(); ++j)
        for (std::size_t i = 0; i < pb.grid.nx(); ++i) ASSERT_NEAR(n2[pb.grid.index(i, j)], n1[i], 1e-10);
}

TEST(Step2D, LinearSolverRoutesAgree) {
    Problem2D direct = make_problem(1.0, 0.05, 5.0, 0.005);
    Problem2D krylov = direct;
    krylov.direct_solver_limit = 0;
    const Field curr = radial(direct.grid, 0.3, 0.9, 0.9);
    Step2DStats sd, sk;
    const Field a = step2d(curr, direct, &sd);
    const Field b = step2d(curr, krylov, &sk);
    EXPECT_EQ(sd.gauss_seidel_fallbacks, 0);
    EXPECT_EQ(sk.gauss_seidel_fallbacks, 0);
    for (std::size_t k = 0; k < a.size(); ++k) ASSERT_NEAR(a[k], b[k], 1e-10);
}

TEST(Step2D, NewtonAgreesWithGaussSeidel) {
    const Problem2D pb = make_problem(1.0, 0.1, 3.0, 0.005);
    const Field curr = radial(pb.grid, 0.2, 0.9, 0.9);
    const Field a = step2d(curr, pb);
    const Field b = step2d_gauss_seidel(curr, pb);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    EXPECT_LT(worst, 1e-9);
    double res = 0.0;
    for (double v : residual2d(b, curr, pb)) res = std::max(res, std::abs(v));
    EXPECT_LT(res, 1e-10);
}

TEST(Step2D, SymmetryBoundsAndGrowth) {
    const Problem2D pb = make_problem(1.5, 0.05, 20.0, 0.001);
    Field n = shell_initial(pb.grid, 0.6, 1.2, 0.8);
    const double m0 = sum(n);
    for (int k = 0; k < 20; ++k) {
        const Field next = step2d(n, pb);
        ASSERT_LT(dihedral_defect(next, pb.grid), 1e-10);
        for (double v : next) {
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0 + 1e-10);
        }
        ASSERT_LE(sum(next), sum(n) / (1.0 - pb.params.dt) + 1e-8);
        n = next;
    }
    EXPECT_GT(sum(n), m0);
}

TEST(GradientNorm, Examples) {
    const Grid2D unit(3.0, 3.0, 1.0);
    EXPECT_EQ(gradient_lq_norm(Field(unit.size(), 2.0), unit, 2.0), 0.0);
    EXPECT_EQ(gradient_lq_norm(Field(unit.size(), 2.0), unit, INFINITY), 0.0);
    Field px(unit.size());
    for (std::size_t j = 0; j < unit.ny(); ++j)
        for (std::size_t i = 0; i < unit.nx(); ++i) px[unit.index(i, j)] = unit.x(i);
    EXPECT_DOUBLE_EQ(gradient_lq_norm(px, unit, INFINITY), 1.0);
    EXPECT_THROW(gradient_lq_norm(px, unit, 0.5), DomainError);

    const Grid2D g(1.5, 1.5, 0.02);
    Field cone(g.size());
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) cone[g.index(i, j)] = std::max(0.0, 1.0 - std::hypot(g.x(i), g.y(j)));
    EXPECT_NEAR(gradient_lq_norm(cone, g, 2.0), std::sqrt(std::numbers::pi), 0.05 * std::sqrt(std::numbers::pi));
    EXPECT_GE(gradient_lq_norm(cone, g, 2.0), gradient_lq_norm(cone, g, 1.0) / std::sqrt(9.0));
}

TEST(MinNearOrigin, Disc) {
    const Grid2D g(1.0, 1.0, 0.1);
    Field p(g.size());
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) p[g.index(i, j)] = std::hypot(g.x(i), g.y(j)) + 1.0;
    EXPECT_DOUBLE_EQ(min_near_origin(p, g, 0.2), 1.0);
    p[g.index(g.nx() / 2 + 2, g.ny() / 2)] = -1.0;
    EXPECT_DOUBLE_EQ(min_near_origin(p, g, 0.2 + 1e-9), -1.0);
    EXPECT_DOUBLE_EQ(min_near_origin(p, g, 0.15), 1.0);
}
