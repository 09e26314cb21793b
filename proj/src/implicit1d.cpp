#include "pmfd/implicit1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pmfd/errors.hpp"
#include "pmfd/kernels.hpp"
#include "pmfd/tridiagonal.hpp"

namespace pmfd {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;

double max_abs(const Field& v) { return kernels::active().max_abs(v.data(), v.size()); }

/// Residual and tridiagonal Jacobian of one implicit step.
class StepSystem {
public:
    StepSystem(std::span<const double> curr, const ImplicitProblem& problem,
               const std::optional<Field>& c)
        : curr_(curr), pb_(problem), c_(c), n_(curr.size()) {
        if (n_ != problem.grid.size())
            throw std::invalid_argument("implicit step: field/grid size mismatch");
        if (is_nutrient_fed(problem.growth) && (!c || c->size() != n_))
            throw std::invalid_argument("implicit step: nutrient-fed growth needs a nutrient field");
        p_.resize(n_);
        q_.resize(n_ - 1);
        a_.resize(n_ - 1);
        g_.resize(n_);
        r_.resize(n_);
        lower_.resize(n_ - 1);
        diag_.resize(n_);
        upper_.resize(n_ - 1);
        scratch_.resize(n_);
        if (c) {
            for (std::size_t i = 0; i < n_; ++i) g_[i] = growth_eval(pb_.growth, (*c)[i]);
        }
    }

    const Field& residual(std::span<const double> x) {
        const auto& kt = kernels::active();
        pressure_into(x, pb_.law, p_);
        kt.face_diff(p_.data(), n_ - 1, pb_.grid.dx, q_.data());
        kt.upwind_flux(x.data(), q_.data(), n_ - 1, a_.data());
        if (!c_) {
            for (std::size_t i = 0; i < n_; ++i) g_[i] = growth_eval(pb_.growth, p_[i]);
        }
        const double dt = pb_.params.dt;
        const double nu = pb_.nu();
        for (std::size_t i = 0; i < n_; ++i) {
            const double right = i + 1 < n_ ? a_[i] : 0.0;
            const double left = i > 0 ? a_[i - 1] : 0.0;
            r_[i] = (1.0 - dt * g_[i]) * x[i] - nu * (right - left) - curr_[i];
        }
        return r_;
    }

    /// Jacobian at the point of the last residual() call.
    void jacobian(std::span<const double> x) {
        const double dt = pb_.params.dt;
        const double nu = pb_.nu();
        const double gamma = pb_.law.gamma();
        for (std::size_t i = 0; i < n_; ++i) {
            double d = 1.0 - dt * g_[i];
            if (!c_) d -= dt * growth_derivative(pb_.growth, p_[i]) * gamma * p_[i];
            diag_[i] = d;
        }
        for (std::size_t f = 0; f + 1 < n_; ++f) {
            const FluxPair fp = flux_A(x[f], x[f + 1], pb_.law, pb_.grid.dx);
            // Face f couples node f (as U) and node f+1 (as V).
            diag_[f] -= nu * fp.partial_1;
            upper_[f] = -nu * fp.partial_2;
            lower_[f] = nu * fp.partial_1;
            diag_[f + 1] += nu * fp.partial_2;
        }
    }

    void solve_newton_direction(Field& delta) {
        for (std::size_t i = 0; i < n_; ++i) delta[i] = -r_[i];
        thomas_solve_into(lower_, diag_, upper_, delta, scratch_, delta);
    }

    std::size_t size() const noexcept { return n_; }

private:
    std::span<const double> curr_;
    const ImplicitProblem& pb_;
    const std::optional<Field>& c_;
    std::size_t n_;
    Field p_, q_, a_, g_, r_;
    Field lower_, diag_, upper_, scratch_;
};

/// Bound on the diagonal of the Jacobian over all states with pressure at
/// most p_max. Makes u - h R(u) order preserving for h <= 1/bound.
double jacobian_diagonal_bound(const ImplicitProblem& pb, double p_max,
                               const std::optional<Field>& c) {
    const double dt = pb.params.dt;
    const double gamma = pb.law.gamma();
    double g_abs = 0.0;
    double dg_abs = 0.0;
    if (c) {
        for (double v : *c) g_abs = std::max(g_abs, std::abs(growth_eval(pb.growth, v)));
    } else {
        constexpr int samples = 256;
        for (int k = 0; k <= samples; ++k) {
            const double p = p_max * k / samples;
            g_abs = std::max(g_abs, std::abs(growth_eval(pb.growth, p)));
            dg_abs = std::max(dg_abs, std::abs(growth_derivative(pb.growth, p)));
        }
    }
    const double flux_bound = 2.0 * (gamma + 1.0) * p_max / pb.grid.dx;
    return 1.0 + dt * g_abs + dt * dg_abs * gamma * p_max + pb.nu() * flux_bound;
}

}  // namespace

FluxPair flux_A(double u, double v, const PressureLaw& law, double dx) {
    if (u < 0.0 || v < 0.0) throw DomainError("flux_A: negative density argument");
    const double q = (law.pressure(v) - law.pressure(u)) / dx;
    const double qp = q > 0.0 ? q : 0.0;
    const double qm = q < 0.0 ? -q : 0.0;
    const double h = q > 0.0 ? v : (q < 0.0 ? u : 0.5 * (u + v));
    const double scale = law.kappa() * law.gamma() * h / dx;
    return {v * qp - u * qm, -scale * law.power_minus_one(u) - qm,
            scale * law.power_minus_one(v) + qp};
}

void check_time_step(double dt, const GrowthModel& growth) {
    if (!(dt > 0.0)) throw DomainError("time step must be positive");
    const double g0 = growth_sup(growth);
    if (g0 > 0.0 && !(dt < 1.0 / g0)) {
        std::ostringstream msg;
        msg << "time step " << dt << " violates dt < 1/G(0) = " << 1.0 / g0;
        throw DomainError(msg.str());
    }
}

Field residual(std::span<const double> next, std::span<const double> curr,
               const ImplicitProblem& problem, const std::optional<Field>& c) {
    if (next.size() != curr.size()) throw std::invalid_argument("residual: size mismatch");
    StepSystem sys(curr, problem, c);
    return sys.residual(next);
}

Field solve_step_newton(std::span<const double> curr, const ImplicitProblem& problem,
                        const std::optional<Field>& c) {
    check_time_step(problem.params.dt, problem.growth);
    StepSystem sys(curr, problem, c);
    const auto n_h = homeostatic_density(problem.growth, problem.law);
    const double hi = n_h.value_or(std::numeric_limits<double>::infinity());
    auto project = [hi](double v) { return std::clamp(v, 0.0, hi); };

    const std::size_t n = sys.size();
    Field x(n), delta(n), trial(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = project(curr[i]);

    double r_norm = max_abs(sys.residual(x));
    for (int it = 0; it < problem.params.newton_max_iter; ++it) {
        if (r_norm <= problem.params.newton_tol) return x;
        sys.jacobian(x);
        sys.solve_newton_direction(delta);
        double lambda = 1.0;
        while (true) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = project(x[i] + lambda * delta[i]);
            const double t_norm = max_abs(sys.residual(trial));
            if (t_norm <= (1.0 - kArmijo * lambda) * r_norm) {
                x.swap(trial);
                r_norm = t_norm;
                break;
            }
            lambda *= 0.5;
            if (lambda < kMinStep) {
                throw SolverError("newton: line search stalled at residual " +
                                      std::to_string(r_norm),
                                  x);
            }
        }
    }
    if (r_norm <= problem.params.newton_tol) return x;
    throw SolverError("newton: no convergence in " + std::to_string(problem.params.newton_max_iter) +
                          " iterations, residual " + std::to_string(r_norm),
                      x);
}

MonotoneResult solve_step_monotone(std::span<const double> curr, const ImplicitProblem& problem,
                                   const std::optional<Field>& c, const BracketObserver& observer) {
    check_time_step(problem.params.dt, problem.growth);
    StepSystem sys(curr, problem, c);
    const std::size_t n = sys.size();

    double start;
    if (auto n_h = homeostatic_density(problem.growth, problem.law)) {
        start = *n_h;
    } else {
        // Constant in space, s >= N_k / (1 - dt G_k) at every node, hence a supersolution.
        const double g_sup = growth_sup(problem.growth);
        start = *std::max_element(curr.begin(), curr.end());
        if (g_sup > 0.0) start /= 1.0 - problem.params.dt * g_sup;
    }
    const double p_max = problem.law.pressure(start);
    const double h = std::min(problem.params.monotone_pseudo_dt,
                              1.0 / jacobian_diagonal_bound(problem, p_max, c));

    MonotoneResult out{Field(n, start), Field(n, 0.0), 0};
    Field r_up(n);
    const double tol = problem.params.monotone_tol;
    for (long it = 0; it < problem.params.monotone_max_iter; ++it) {
        r_up = sys.residual(out.upper);
        const Field& r_lo = sys.residual(out.lower);
        double gap = 0.0;
        for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, out.upper[i] - out.lower[i]);
        if (gap <= tol && max_abs(r_up) <= tol && max_abs(r_lo) <= tol) {
            out.iterations = it;
            return out;
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.upper[i] -= h * r_up[i];
            out.lower[i] -= h * r_lo[i];
        }
        if (observer) observer(out.upper, out.lower);
    }
    Field mid(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (out.upper[i] + out.lower[i]);
    throw SolverError("monotone iteration: pseudo-time budget exhausted", mid);
}

Field solve_step(std::span<const double> curr, const ImplicitProblem& problem,
                 const std::optional<Field>& c, StepStats* stats) {
    try {
        Field x = solve_step_newton(curr, problem, c);
        if (stats) ++stats->newton_steps;
        return x;
    } catch (const SolverError&) {
        if (stats) ++stats->monotone_fallbacks;
    }
    MonotoneResult m = solve_step_monotone(curr, problem, c);
    Field mid(m.upper.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (m.upper[i] + m.lower[i]);
    return mid;
}

SimState advance(const SimState& state, double t_end, const ImplicitProblem& problem,
                 const AdvanceHooks& hooks, StepStats* stats) {
    if (t_end < state.t) throw std::invalid_argument("advance: t_end before current time");
    const double dt = problem.params.dt;
    check_time_step(dt, problem.growth);
    const bool fed = is_nutrient_fed(problem.growth);
    if (fed && !hooks.nutrient)
        throw std::invalid_argument("advance: nutrient-fed growth needs a nutrient solver");

    const double span = t_end - state.t;
    const long full = static_cast<long>(std::floor(span / dt * (1.0 + 1e-12)));
    const double rest = span - static_cast<double>(full) * dt;
    const long steps = full + (rest > 1e-9 * dt ? 1 : 0);

    SimState cur = state;
    ImplicitProblem short_step = problem;
    for (long k = 0; k < steps; ++k) {
        const bool last_short = k == full;
        const ImplicitProblem& pb = last_short ? short_step : problem;
        if (last_short) short_step.params.dt = rest;

        SimState next;
        if (fed) next.c = hooks.nutrient(cur.n);
        try {
            next.n = solve_step(cur.n, pb, next.c, stats);
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " at step " + std::to_string(k), e.iterate(), k);
        }
        next.t = last_short ? t_end : state.t + static_cast<double>(k + 1) * dt;
        if (hooks.on_step) hooks.on_step(cur, next, k);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace pmfd
