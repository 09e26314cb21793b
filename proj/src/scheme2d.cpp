#include "pmfd/scheme2d.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pmfd/errors.hpp"
#include "pmfd/kernels.hpp"

namespace pmfd {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

class System2D {
public:
    System2D(std::span<const double> curr, const Problem2D& pb) : curr_(curr), pb_(pb) {
        const std::size_t n = pb.grid.size();
        if (curr.size() != n) throw std::invalid_argument("scheme2d: field/grid size mismatch");
        if (is_nutrient_fed(pb.growth))
            throw std::invalid_argument("scheme2d: growth must be pressure-fed or constant");
        nx_ = pb.grid.nx();
        ny_ = pb.grid.ny();
        p_.resize(n);
        g_.resize(n);
        r_.resize(n);
        ax_.resize((nx_ - 1) * ny_);
        ay_.resize(nx_ * (ny_ - 1));
        qx_.resize(ax_.size());
        qy_.resize(ay_.size());
    }

    // x-face (i+1/2, j) is stored at j*(nx-1)+i, y-face (i, j+1/2) at j*nx+i.
    const Field& residual(std::span<const double> x) {
        const auto& kt = kernels::active();
        const double dx = pb_.grid.dx();
        pressure_into(x, pb_.law, p_);
        for (std::size_t j = 0; j < ny_; ++j) {
            const std::size_t row = j * nx_;
            const std::size_t frow = j * (nx_ - 1);
            kt.face_diff(p_.data() + row, nx_ - 1, dx, qx_.data() + frow);
            kt.upwind_flux(x.data() + row, qx_.data() + frow, nx_ - 1, ax_.data() + frow);
        }
        // y-faces: difference between consecutive rows, contiguous in i.
        for (std::size_t j = 0; j + 1 < ny_; ++j) {
            for (std::size_t i = 0; i < nx_; ++i) {
                const std::size_t k = j * nx_ + i;
                const double q = (p_[k + nx_] - p_[k]) / dx;
                const double qp = q > 0.0 ? q : 0.0;
                const double qm = q < 0.0 ? -q : 0.0;
                qy_[k] = q;
                ay_[k] = x[k + nx_] * qp - x[k] * qm;
            }
        }
        for (std::size_t k = 0; k < p_.size(); ++k) g_[k] = growth_eval(pb_.growth, p_[k]);
        const double dt = pb_.params.dt;
        const double nu = pb_.nu();
        for (std::size_t j = 0; j < ny_; ++j) {
            for (std::size_t i = 0; i < nx_; ++i) {
                const std::size_t k = j * nx_ + i;
                r_[k] = (1.0 - dt * g_[k]) * x[k] - nu * flux_divergence(i, j) - curr_[k];
            }
        }
        return r_;
    }

    /// Residual of node k alone, with its value replaced by v and the
    /// neighbours taken from x. Used by the Gauss-Seidel sweeps.
    std::pair<double, double> local_residual(std::span<const double> x, std::size_t i,
                                             std::size_t j, double v) const {
        const PressureLaw& law = pb_.law;
        const double dx = pb_.grid.dx();
        const std::size_t k = j * nx_ + i;
        const double pv = law.pressure(v);
        double flux = 0.0, dflux = 0.0;
        auto face = [&](std::size_t nb, bool node_is_v) {
            // node_is_v: node k sits on the high-index side of the face.
            const FluxPair f = node_is_v ? flux_A(x[nb], v, law, dx) : flux_A(v, x[nb], law, dx);
            if (node_is_v) {
                flux -= f.value;
                dflux -= f.partial_2;
            } else {
                flux += f.value;
                dflux += f.partial_1;
            }
        };
        if (i + 1 < nx_) face(k + 1, false);
        if (i > 0) face(k - 1, true);
        if (j + 1 < ny_) face(k + nx_, false);
        if (j > 0) face(k - nx_, true);
        const double dt = pb_.params.dt;
        const double nu = pb_.nu();
        const double g = growth_eval(pb_.growth, pv);
        const double dg = growth_derivative(pb_.growth, pv);
        const double r = (1.0 - dt * g) * v - nu * flux - curr_[k];
        const double dr = 1.0 - dt * g - dt * dg * law.gamma() * pv - nu * dflux;
        return {r, dr};
    }

    /// Five-point Jacobian at the point of the last residual() call.
    void jacobian(std::span<const double> x, SpMat& jac) {
        const std::size_t n = p_.size();
        const double dt = pb_.params.dt;
        const double nu = pb_.nu();
        const double gamma = pb_.law.gamma();
        const double dx = pb_.grid.dx();
        diag_.assign(n, 0.0);
        trips_.clear();
        trips_.reserve(5 * n);
        for (std::size_t k = 0; k < n; ++k)
            diag_[k] = 1.0 - dt * g_[k] - dt * growth_derivative(pb_.growth, p_[k]) * gamma * p_[k];
        auto couple = [&](std::size_t lo, std::size_t hi) {
            if (x[lo] == 0.0 && x[hi] == 0.0) return;
            const FluxPair f = flux_A(x[lo], x[hi], pb_.law, dx);
            diag_[lo] -= nu * f.partial_1;
            diag_[hi] += nu * f.partial_2;
            trips_.emplace_back(static_cast<int>(lo), static_cast<int>(hi), -nu * f.partial_2);
            trips_.emplace_back(static_cast<int>(hi), static_cast<int>(lo), nu * f.partial_1);
        };
        for (std::size_t j = 0; j < ny_; ++j) {
            for (std::size_t i = 0; i < nx_; ++i) {
                const std::size_t k = j * nx_ + i;
                if (i + 1 < nx_) couple(k, k + 1);
                if (j + 1 < ny_) couple(k, k + nx_);
            }
        }
        for (std::size_t k = 0; k < n; ++k)
            trips_.emplace_back(static_cast<int>(k), static_cast<int>(k), diag_[k]);
        jac.resize(static_cast<int>(n), static_cast<int>(n));
        jac.setFromTriplets(trips_.begin(), trips_.end());
    }

    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }

private:
    double flux_divergence(std::size_t i, std::size_t j) const {
        const std::size_t fx = j * (nx_ - 1) + i;
        const std::size_t k = j * nx_ + i;
        double d = 0.0;
        if (i + 1 < nx_) d += ax_[fx];
        if (i > 0) d -= ax_[fx - 1];
        if (j + 1 < ny_) d += ay_[k];
        if (j > 0) d -= ay_[k - nx_];
        return d;
    }

    std::span<const double> curr_;
    const Problem2D& pb_;
    std::size_t nx_ = 0, ny_ = 0;
    Field p_, g_, r_, ax_, ay_, qx_, qy_, diag_;
    std::vector<Eigen::Triplet<double, int>> trips_;
};

double max_abs(const Field& v) { return kernels::active().max_abs(v.data(), v.size()); }

bool linear_solve(const SpMat& jac, const Field& r, Field& delta, bool direct) {
    const Eigen::Index n = static_cast<Eigen::Index>(r.size());
    Eigen::Map<const Eigen::VectorXd> rhs(r.data(), n);
    Eigen::Map<Eigen::VectorXd> out(delta.data(), n);
    if (direct) {
        Eigen::SparseLU<SpMat> lu;
        lu.compute(jac);
        if (lu.info() != Eigen::Success) return false;
        out = -lu.solve(rhs);
        return lu.info() == Eigen::Success;
    }
    Eigen::BiCGSTAB<SpMat, Eigen::DiagonalPreconditioner<double>> it;
    it.setTolerance(1e-6);
    it.setMaxIterations(2000);
    it.compute(jac);
    out = -it.solve(rhs);
    if (it.info() == Eigen::Success) return true;
    Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<double>> ilu;
    ilu.setTolerance(1e-13);
    ilu.compute(jac);
    out = -ilu.solve(rhs);
    return ilu.info() == Eigen::Success;
}

Field newton2d(std::span<const double> curr, const Problem2D& pb, Step2DStats* stats) {
    System2D sys(curr, pb);
    const auto n_h = homeostatic_density(pb.growth, pb.law);
    const double hi = n_h.value_or(std::numeric_limits<double>::infinity());
    const std::size_t n = curr.size();
    Field x(n), delta(n), trial(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = std::clamp(curr[k], 0.0, hi);
    SpMat jac;
    const bool direct = n <= pb.direct_solver_limit;
    double r_norm = max_abs(sys.residual(x));
    for (int it = 0; it <= pb.params.newton_max_iter; ++it) {
        if (r_norm <= pb.params.newton_tol) return x;
        if (it == pb.params.newton_max_iter) break;
        sys.jacobian(x, jac);
        if (!linear_solve(jac, sys.residual(x), delta, direct))
            throw SolverError("scheme2d: linear solve failed", x);
        if (stats) ++stats->newton_iterations;
        double lambda = 1.0;
        while (true) {
            for (std::size_t k = 0; k < n; ++k) trial[k] = std::clamp(x[k] + lambda * delta[k], 0.0, hi);
            const double t_norm = max_abs(sys.residual(trial));
            if (t_norm <= (1.0 - kArmijo * lambda) * r_norm) {
                x.swap(trial);
                r_norm = t_norm;
                break;
            }
            lambda *= 0.5;
            if (lambda < kMinStep) throw SolverError("scheme2d: line search stalled", x);
        }
    }
    throw SolverError("scheme2d: newton did not converge, residual " + std::to_string(r_norm), x);
}

}  // namespace

Field residual2d(std::span<const double> next, std::span<const double> curr,
                 const Problem2D& problem) {
    if (next.size() != curr.size()) throw std::invalid_argument("residual2d: size mismatch");
    System2D sys(curr, problem);
    return sys.residual(next);
}

Field step2d_gauss_seidel(std::span<const double> curr, const Problem2D& problem) {
    check_time_step(problem.params.dt, problem.growth);
    System2D sys(curr, problem);
    const auto n_h = homeostatic_density(problem.growth, problem.law);
    const std::size_t n = curr.size();
    Field x(curr.begin(), curr.end());
    double hi_bound = n_h.value_or(0.0);
    if (!n_h) {
        const double g_sup = growth_sup(problem.growth);
        hi_bound = *std::max_element(curr.begin(), curr.end());
        if (g_sup > 0.0) hi_bound /= 1.0 - problem.params.dt * g_sup;
    }
    for (std::size_t k = 0; k < n; ++k) x[k] = std::clamp(x[k], 0.0, hi_bound);
    const double tol = problem.params.newton_tol;
    for (long sweep = 0; sweep < problem.gauss_seidel_max_sweeps; ++sweep) {
        for (int colour = 0; colour < 2; ++colour) {
            for (std::size_t j = 0; j < sys.ny(); ++j) {
                for (std::size_t i = (j + colour) % 2; i < sys.nx(); i += 2) {
                    const std::size_t k = j * sys.nx() + i;
                    // Each local residual is increasing in its own unknown:
                    // safeguarded Newton inside a shrinking bracket.
                    double lo = 0.0, hi = hi_bound, v = x[k];
                    for (int it = 0; it < 100; ++it) {
                        const auto [r, dr] = sys.local_residual(x, i, j, v);
                        if (std::abs(r) <= 0.1 * tol) break;
                        (r > 0.0 ? hi : lo) = v;
                        double next = dr > 0.0 ? v - r / dr : 0.5 * (lo + hi);
                        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
                        if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
                        v = next;
                    }
                    x[k] = v;
                }
            }
        }
        if (max_abs(sys.residual(x)) <= tol) return x;
    }
    throw SolverError("scheme2d: Gauss-Seidel sweep budget exhausted", x);
}

Field step2d(std::span<const double> curr, const Problem2D& problem, Step2DStats* stats) {
    check_time_step(problem.params.dt, problem.growth);
    try {
        return newton2d(curr, problem, stats);
    } catch (const SolverError&) {
        if (stats) ++stats->gauss_seidel_fallbacks;
    }
    return step2d_gauss_seidel(curr, problem);
}

double gradient_lq_norm(std::span<const double> p, const Grid2D& grid, double q) {
    if (!(q >= 1.0)) throw DomainError("gradient_lq_norm: q must be at least 1");
    const std::size_t nx = grid.nx(), ny = grid.ny();
    if (p.size() != grid.size()) throw std::invalid_argument("gradient_lq_norm: size mismatch");
    const double dx = grid.dx();
    Field faces;
    faces.reserve((nx - 1) * ny + nx * (ny - 1));
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i + 1 < nx; ++i)
            faces.push_back((p[j * nx + i + 1] - p[j * nx + i]) / dx);
    for (std::size_t j = 0; j + 1 < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) faces.push_back((p[(j + 1) * nx + i] - p[j * nx + i]) / dx);
    const auto& kt = kernels::active();
    if (std::isinf(q)) return kt.max_abs(faces.data(), faces.size());
    double s;
    if (q == std::floor(q) && q <= 64.0) {
        s = kt.sum_abs_pow(faces.data(), faces.size(), static_cast<unsigned>(q));
    } else {
        s = 0.0;
        for (double f : faces) s += std::pow(std::abs(f), q);
    }
    return std::pow(s * dx * dx, 1.0 / q);
}

double min_near_origin(std::span<const double> p, const Grid2D& grid, double radius) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double r = std::hypot(grid.x(i), grid.y(j));
            if (r <= radius * (1.0 + 1e-12)) m = std::min(m, p[grid.index(i, j)]);
        }
    }
    return m;
}

}  // namespace pmfd
