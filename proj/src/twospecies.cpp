#include "pmfd/twospecies.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "pmfd/errors.hpp"
#include "pmfd/kernels.hpp"

namespace pmfd {

namespace {

constexpr int kMaxSplit = 6;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;

using Block = Eigen::Matrix2d;
using Pair = Eigen::Vector2d;

double negative_part(double g) { return g < 0.0 ? -g : 0.0; }

class CoupledSystem {
public:
    CoupledSystem(std::span<const double> p0, std::span<const double> d0, std::span<const double> g,
                  const TwoSpeciesProblem& pb)
        : p0_(p0), d0_(d0), g_(g), pb_(pb), n_(p0.size()) {
        ps_[0].resize(n_);
        ps_[1].resize(n_);
        total_.resize(n_);
        press_.resize(n_);
        q_.resize(n_ - 1);
        fp_.resize(n_ - 1);
        fd_.resize(n_ - 1);
        r_.resize(2 * n_);
        diag_.resize(n_);
        lower_.resize(n_ - 1);
        upper_.resize(n_ - 1);
    }

    /// Residual stacked as (P_0, D_0, P_1, D_1, ...).
    const Field& residual(std::span<const double> x) {
        const auto& kt = kernels::active();
        for (std::size_t i = 0; i < n_; ++i) {
            ps_[0][i] = x[2 * i];
            ps_[1][i] = x[2 * i + 1];
            total_[i] = x[2 * i] + x[2 * i + 1];
        }
        pressure_into(total_, pb_.law, press_);
        kt.face_diff(press_.data(), n_ - 1, pb_.grid.dx, q_.data());
        kt.upwind_flux(ps_[0].data(), q_.data(), n_ - 1, fp_.data());
        kt.upwind_flux(ps_[1].data(), q_.data(), n_ - 1, fd_.data());
        const double dt = pb_.params.dt;
        const double nu = dt / pb_.grid.dx;
        for (std::size_t i = 0; i < n_; ++i) {
            const double p = ps_[0][i];
            const double d = ps_[1][i];
            const double fp = (i + 1 < n_ ? fp_[i] : 0.0) - (i > 0 ? fp_[i - 1] : 0.0);
            const double fd = (i + 1 < n_ ? fd_[i] : 0.0) - (i > 0 ? fd_[i - 1] : 0.0);
            r_[2 * i] = (1.0 - dt * g_[i]) * p - nu * fp - p0_[i];
            r_[2 * i + 1] = d - dt * negative_part(g_[i]) * p - nu * fd - d0_[i];
        }
        return r_;
    }

    /// Jacobian blocks at the point of the last residual() call.
    void jacobian() {
        const double dt = pb_.params.dt;
        const double nu = dt / pb_.grid.dx;
        const double gk = pb_.law.gamma() * pb_.law.kappa() / pb_.grid.dx;
        for (std::size_t i = 0; i < n_; ++i) {
            diag_[i] << 1.0 - dt * g_[i], 0.0, -dt * negative_part(g_[i]), 1.0;
        }
        for (std::size_t f = 0; f + 1 < n_; ++f) {
            const double q = q_[f];
            const double qp = q > 0.0 ? q : 0.0;
            const double qm = q < 0.0 ? -q : 0.0;
            const double a = gk * pb_.law.power_minus_one(total_[f]);
            const double b = gk * pb_.law.power_minus_one(total_[f + 1]);
            // d(face flux of species s)/d(unknowns at node f) and at node f+1.
            Block du, dv;
            for (int s = 0; s < 2; ++s) {
                const double u = ps_[s][f];
                const double v = ps_[s][f + 1];
                const double h = q > 0.0 ? v : (q < 0.0 ? u : 0.5 * (u + v));
                du(s, 0) = du(s, 1) = -h * a;
                dv(s, 0) = dv(s, 1) = h * b;
                du(s, s) -= qm;
                dv(s, s) += qp;
            }
            diag_[f] -= nu * du;
            upper_[f] = -nu * dv;
            lower_[f] = nu * du;
            diag_[f + 1] += nu * dv;
        }
    }

    /// Solves J delta = -r by block Thomas elimination.
    void newton_direction(Field& delta) {
        std::vector<Block> c(n_);
        std::vector<Pair> y(n_);
        Block piv = diag_[0];
        auto rhs = [&](std::size_t i) { return Pair(-r_[2 * i], -r_[2 * i + 1]); };
        Eigen::PartialPivLU<Block> lu(piv);
        check_pivot(piv, 0);
        y[0] = lu.solve(rhs(0));
        for (std::size_t i = 1; i < n_; ++i) {
            c[i - 1] = lu.solve(upper_[i - 1]);
            piv = diag_[i] - lower_[i - 1] * c[i - 1];
            check_pivot(piv, i);
            lu.compute(piv);
            y[i] = lu.solve(rhs(i) - lower_[i - 1] * y[i - 1]);
        }
        for (std::size_t i = n_ - 1; i-- > 0;) y[i] -= c[i] * y[i + 1];
        for (std::size_t i = 0; i < n_; ++i) {
            delta[2 * i] = y[i](0);
            delta[2 * i + 1] = y[i](1);
        }
    }

private:
    static void check_pivot(const Block& b, std::size_t i) {
        if (b.determinant() == 0.0)
            throw DomainError("two-species Jacobian: singular pivot block at node " + std::to_string(i), i);
    }

    std::span<const double> p0_, d0_, g_;
    const TwoSpeciesProblem& pb_;
    std::size_t n_;
    Field ps_[2];
    Field total_, press_, q_, fp_, fd_, r_;
    std::vector<Block> diag_, lower_, upper_;
};

Field newton(std::span<const double> p0, std::span<const double> d0, std::span<const double> g,
             const TwoSpeciesProblem& pb) {
    CoupledSystem sys(p0, d0, g, pb);
    const std::size_t n = p0.size();
    const auto& kt = kernels::active();
    Field x(2 * n), delta(2 * n), trial(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        x[2 * i] = std::max(p0[i], 0.0);
        x[2 * i + 1] = std::max(d0[i], 0.0);
    }
    auto norm = [&](const Field& r) { return kt.max_abs(r.data(), r.size()); };
    double r_norm = norm(sys.residual(x));
    for (int it = 0; it <= pb.params.newton_max_iter; ++it) {
        if (r_norm <= pb.params.newton_tol) return x;
        if (it == pb.params.newton_max_iter) break;
        sys.jacobian();
        sys.newton_direction(delta);
        double lambda = 1.0;
        while (true) {
            for (std::size_t i = 0; i < 2 * n; ++i) trial[i] = std::max(x[i] + lambda * delta[i], 0.0);
            const double t_norm = norm(sys.residual(trial));
            if (t_norm <= (1.0 - kArmijo * lambda) * r_norm) {
                x.swap(trial);
                r_norm = t_norm;
                break;
            }
            lambda *= 0.5;
            if (lambda < kMinStep) throw SolverError("two-species newton: line search stalled", x);
        }
    }
    throw SolverError("two-species newton: no convergence, residual " + std::to_string(r_norm), x);
}

std::pair<Field, Field> solve_split(std::span<const double> p0, std::span<const double> d0,
                                    std::span<const double> g, const TwoSpeciesProblem& pb,
                                    int depth) {
    try {
        const Field x = newton(p0, d0, g, pb);
        const std::size_t n = p0.size();
        Field p(n), d(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = x[2 * i];
            d[i] = x[2 * i + 1];
        }
        return {std::move(p), std::move(d)};
    } catch (const SolverError&) {
        if (depth >= kMaxSplit) throw;
    }
    TwoSpeciesProblem half = pb;
    half.params.dt *= 0.5;
    auto [p1, d1] = solve_split(p0, d0, g, half, depth + 1);
    return solve_split(p1, d1, g, half, depth + 1);
}

}  // namespace

std::pair<Field, Field> twospecies_rhs(std::span<const double> n_p, std::span<const double> n_d,
                                       std::span<const double> g, const Grid1D& grid,
                                       const PressureLaw& law) {
    const std::size_t n = n_p.size();
    Field total(n), press(n), q(n - 1), fp(n - 1), fd(n - 1);
    for (std::size_t i = 0; i < n; ++i) total[i] = n_p[i] + n_d[i];
    const auto& kt = kernels::active();
    pressure_into(total, law, press);
    kt.face_diff(press.data(), n - 1, grid.dx, q.data());
    kt.upwind_flux(n_p.data(), q.data(), n - 1, fp.data());
    kt.upwind_flux(n_d.data(), q.data(), n - 1, fd.data());
    Field rp(n), rd(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dfp = (i + 1 < n ? fp[i] : 0.0) - (i > 0 ? fp[i - 1] : 0.0);
        const double dfd = (i + 1 < n ? fd[i] : 0.0) - (i > 0 ? fd[i - 1] : 0.0);
        rp[i] = dfp / grid.dx + n_p[i] * g[i];
        rd[i] = dfd / grid.dx + n_p[i] * negative_part(g[i]);
    }
    return {std::move(rp), std::move(rd)};
}

std::pair<Field, Field> solve_twospecies_step(std::span<const double> n_p,
                                              std::span<const double> n_d,
                                              std::span<const double> g,
                                              const TwoSpeciesProblem& problem) {
    const std::size_t n = problem.grid.size();
    if (n_p.size() != n || n_d.size() != n || g.size() != n)
        throw std::invalid_argument("two-species step: field/grid size mismatch");
    check_time_step(problem.params.dt, problem.growth);
    return solve_split(n_p, n_d, g, problem, 0);
}

Field twospecies_growth(const TwoSpeciesProblem& problem, const std::optional<Field>& c,
                        std::size_t size) {
    Field g(size);
    if (is_nutrient_fed(problem.growth)) {
        if (!c) throw std::invalid_argument("two-species: nutrient-fed growth needs a nutrient field");
        for (std::size_t i = 0; i < size; ++i) g[i] = growth_eval(problem.growth, (*c)[i]);
    } else if (std::holds_alternative<ConstantGrowth>(problem.growth)) {
        std::fill(g.begin(), g.end(), std::get<ConstantGrowth>(problem.growth).g0);
    } else {
        throw std::invalid_argument("two-species: growth must be nutrient-fed or constant");
    }
    return g;
}

TwoSpeciesState step_twospecies(const TwoSpeciesState& state, const TwoSpeciesProblem& problem) {
    const std::size_t n = state.n_p.size();
    TwoSpeciesState next;
    if (is_nutrient_fed(problem.growth)) {
        Field total(n);
        for (std::size_t i = 0; i < n; ++i) total[i] = state.n_p[i] + state.n_d[i];
        next.c = solve_nutrient(total, problem.nutrient, problem.grid, support_tolerance(total));
    }
    const Field g = twospecies_growth(problem, next.c, n);
    auto [p, d] = solve_twospecies_step(state.n_p, state.n_d, g, problem);
    next.n_p = std::move(p);
    next.n_d = std::move(d);
    next.t = state.t + problem.params.dt;
    return next;
}

}  // namespace pmfd
