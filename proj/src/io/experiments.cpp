#include "pmfd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "pmfd/analytic.hpp"
#include "pmfd/csv.hpp"
#include "pmfd/errors.hpp"
#include "pmfd/implicit1d.hpp"
#include "pmfd/manifest.hpp"
#include "pmfd/scheme2d.hpp"
#include "pmfd/twospecies.hpp"

namespace pmfd {

namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kLqOrders{2.0, 4.0, 6.0, 8.0, 10.0, kInf};
const std::vector<double> kFrontTimes{0.5, 1.0, 1.5};

std::vector<std::string> diagnostics_header(bool gradients) {
    std::vector<std::string> h{"t",  "mass",       "l1_pressure", "linf_density", "linf_pressure",
                               "bv", "dt_l1",      "grad_l2_sq",  "ab_min",       "comp_residual"};
    if (gradients)
        for (const char* g : {"grad_l2", "grad_l4", "grad_l6", "grad_l8", "grad_l10", "grad_linf"})
            h.emplace_back(g);
    return h;
}

std::vector<std::optional<double>> diagnostics_row(const DiagnosticsRecord& r, bool gradients) {
    std::vector<std::optional<double>> row{r.t,  r.mass,  r.l1_pressure, r.linf_density,
                                           r.linf_pressure, r.bv, r.dt_l1, r.grad_l2_sq,
                                           r.ab_min, r.comp_residual};
    if (gradients)
        for (double q : kLqOrders) row.emplace_back(r.lq_grad_norms.at(q));
    return row;
}

std::string metric_key(const char* name, double t) {
    std::ostringstream o;
    o << name << '@' << t;
    return o.str();
}

/// Output directory bookkeeping: every file written is remembered for the manifest.
class Output {
public:
    explicit Output(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    fs::path add(const std::string& name) {
        fs::path p = dir_ / name;
        if (std::find(files_.begin(), files_.end(), p) == files_.end()) files_.push_back(p);
        return p;
    }
    const fs::path& dir() const noexcept { return dir_; }
    const std::vector<fs::path>& files() const noexcept { return files_; }

private:
    fs::path dir_;
    std::vector<fs::path> files_;
};

bool snapshot_due(long step, bool final, long every) {
    return step == 0 || final || (every > 0 && step % every == 0);
}

bool row_due(long step, bool final, long cadence) { return step % cadence == 0 || final; }

void snapshot1d(Output& out, long step, const Grid1D& grid, const PressureLaw& law,
                const std::vector<std::pair<std::string, const Field*>>& columns) {
    std::vector<std::string> header{"x"};
    for (const auto& [name, _] : columns) header.push_back(name);
    // Pressure follows the first column (density or total density).
    header.insert(header.begin() + 2, "p");
    CsvWriter w(out.add("snapshot_" + std::to_string(step) + ".csv"), header);
    const Field& n = *columns.front().second;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::vector<std::optional<double>> row{grid.x(k), n[k], law.pressure(n[k])};
        for (std::size_t c = 1; c < columns.size(); ++c) row.emplace_back((*columns[c].second)[k]);
        w.row(row);
    }
}

void snapshot2d(Output& out, long step, const Grid2D& grid, const PressureLaw& law, const Field& n) {
    CsvWriter w(out.add("snapshot_" + std::to_string(step) + ".csv"), {"x", "y", "n", "p"});
    for (std::size_t j = 0; j < grid.ny(); ++j)
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double v = n[grid.index(i, j)];
            w.row({grid.x(i), grid.y(j), v, law.pressure(v)});
        }
}

Grid1D grid_of(const SimConfig& c) { return Grid1D::from_spacing(c.x_min, c.x_max, c.dx); }

ImplicitProblem problem_of(const SimConfig& c, double gamma, double kappa) {
    return ImplicitProblem{grid_of(c), PressureLaw(gamma, kappa), c.growth(), c.step_params()};
}

NutrientModel nutrient_model(const SimConfig& c, bool vivo) {
    if (vivo) return InVivo{c.c_b, linear_consumption};
    return InVitro{c.c_b, linear_consumption};
}

void finish(RunResult& result, const InvariantMonitor& mon, StepStats stats) {
    result.violations = mon.violations();
    result.metrics["min_density"] = mon.min_density();
    result.metrics["max_density"] = mon.max_density();
    result.metrics["newton_steps"] = static_cast<double>(stats.newton_steps);
    result.metrics["monotone_fallbacks"] = static_cast<double>(stats.monotone_fallbacks);
}

void run_barenblatt(const SimConfig& cfg, Output& out, RunResult& result) {
    const ImplicitProblem pb = problem_of(cfg, cfg.gamma, cfg.kappa);
    const Grid1D& grid = pb.grid;
    SimState s0{0.0, barenblatt_initial(grid, cfg.gamma, cfg.barenblatt_c, cfg.t0), std::nullopt};
    auto exact = [&](double x, double t) { return barenblatt(x, t + cfg.t0, cfg.gamma, cfg.barenblatt_c); };

    CsvWriter diag(out.add("diagnostics.csv"), diagnostics_header(false));
    CsvWriter err(out.add("error.csv"), {"t", "l1_error"});
    SpaceTimeL1Error acc(grid, exact);
    InvariantMonitor mon(cfg.dt, growth_sup(pb.growth), homeostatic_density(pb.growth, pb.law), true);
    const long steps = std::lround(cfg.t_end / cfg.dt);
    double grad_integral = 0.0;

    const DiagnosticsRecord r0 = record(s0, nullptr, grid, pb.law, pb.growth);
    mon.observe(0, s0.n, r0);
    diag.row(diagnostics_row(r0, false));
    snapshot1d(out, 0, grid, pb.law, {{"n", &s0.n}});

    AdvanceHooks hooks;
    hooks.on_step = [&](const SimState& prev, const SimState& next, long k) {
        const long step = k + 1;
        const bool final = step == steps;
        const double dt = next.t - prev.t;
        const DiagnosticsRecord r = record(next, &prev, grid, pb.law, pb.growth);
        mon.observe(step, next.n, r);
        grad_integral += dt * r.grad_l2_sq;
        const double e = acc.add(next.n, next.t, dt);
        if (row_due(step, final, cfg.cadence)) {
            diag.row(diagnostics_row(r, false));
            err.row({next.t, e});
        }
        if (snapshot_due(step, final, cfg.snapshot_every))
            snapshot1d(out, step, grid, pb.law, {{"n", &next.n}});
    };
    StepStats stats;
    const SimState end = advance(s0, cfg.t_end, pb, hooks, &stats);
    err.labelled_row("err1", acc.total());
    result.metrics["err1"] = acc.total();
    result.metrics["mass_final"] = record(end, nullptr, grid, pb.law, pb.growth).mass;
    result.metrics["grad_l2_sq_integral"] = grad_integral;
    finish(result, mon, stats);
}

void run_nutrient(const SimConfig& cfg, bool vivo, Output& out, RunResult& result) {
    const ImplicitProblem pb = problem_of(cfg, cfg.gamma, cfg.kappa);
    const Grid1D& grid = pb.grid;
    const NutrientModel model = nutrient_model(cfg, vivo);
    const FrontRadius front = vivo ? integrate_front_vivo(cfg.r0, cfg.c_b, cfg.g0, cfg.t_end)
                                   : integrate_front_vitro(cfg.r0, cfg.c_b, cfg.t_end);
    auto exact_p = [&](double x, double t) {
        const double r = front.at(t);
        return vivo ? vivo_exact(x, r, cfg.c_b, cfg.g0).p : vitro_exact(x, r, cfg.c_b).p;
    };
    auto nutrient = [&](const Field& n) { return solve_nutrient(n, model, grid, support_tolerance(n)); };

    SimState s0{0.0, nutrient_initial(grid, cfg.gamma, cfg.r0, cfg.c_b, cfg.g0, vivo), std::nullopt};
    s0.c = nutrient(s0.n);
    // The limit density is the indicator of [-R(t), R(t)].
    SpaceTimeL1Error acc(grid, [&](double x, double t) { return std::abs(x) <= front.at(t) ? 1.0 : 0.0; });

    CsvWriter diag(out.add("diagnostics.csv"), diagnostics_header(false));
    CsvWriter err(out.add("error.csv"), {"t", "l1_error"});
    InvariantMonitor mon(cfg.dt, growth_sup(pb.growth), std::nullopt, false);
    const long steps = std::lround(cfg.t_end / cfg.dt);
    ComplementarityTotals comp;

    auto sample = [&](const SimState& s, const std::string& tag) {
        Field p(s.n.size());
        pressure_into(s.n, pb.law, p);
        result.metrics["front_error@" + tag] = front_error(p, grid, front.at(s.t));
        result.metrics["front_position@" + tag] = front_position(p, grid);
        result.metrics["front_exact@" + tag] = front.at(s.t);
        double perr = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k)
            perr = std::max(perr, std::abs(p[k] - exact_p(grid.x(k), s.t)));
        result.metrics["pressure_error@" + tag] = perr;
    };

    const DiagnosticsRecord r0 = record(s0, nullptr, grid, pb.law, pb.growth);
    mon.observe(0, s0.n, r0);
    diag.row(diagnostics_row(r0, false));
    snapshot1d(out, 0, grid, pb.law, {{"n", &s0.n}, {"c", &*s0.c}});

    AdvanceHooks hooks;
    hooks.nutrient = nutrient;
    hooks.on_step = [&](const SimState& prev, const SimState& next, long k) {
        const long step = k + 1;
        const bool final = step == steps;
        const double dt = next.t - prev.t;
        const DiagnosticsRecord r = record(next, &prev, grid, pb.law, pb.growth);
        mon.observe(step, next.n, r);
        comp.add(r.comp_residual, dt);
        const double e = acc.add(next.n, next.t, dt);
        if (row_due(step, final, cfg.cadence)) {
            diag.row(diagnostics_row(r, false));
            err.row({next.t, e});
        }
        for (double ts : kFrontTimes)
            if (std::abs(next.t - ts) <= 0.5 * cfg.dt) sample(next, metric_key("", ts).substr(1));
        if (snapshot_due(step, final, cfg.snapshot_every))
            snapshot1d(out, step, grid, pb.law, {{"n", &next.n}, {"c", &*next.c}});
    };
    StepStats stats;
    const SimState end = advance(s0, cfg.t_end, pb, hooks, &stats);
    sample(end, "final");
    err.labelled_row("err1", acc.total());
    result.metrics["err1"] = acc.total();
    result.metrics["comp_integral"] = comp.integral;
    result.metrics["comp_sup"] = comp.sup;
    finish(result, mon, stats);
}

void run_twospecies(const SimConfig& cfg, Output& out, RunResult& result) {
    const Grid1D grid = grid_of(cfg);
    TwoSpeciesProblem pb{grid, PressureLaw(cfg.gamma, cfg.kappa), cfg.growth(),
                         nutrient_model(cfg, cfg.nutrient == "vivo"), cfg.step_params()};
    TwoSpeciesState s;
    s.n_p.assign(grid.size(), 0.0);
    s.n_d.assign(grid.size(), 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (std::abs(grid.x(k)) <= cfg.r0 * (1.0 + 1e-12)) s.n_p[k] = 1.0;

    auto total_of = [&](const TwoSpeciesState& st) {
        Field n(st.n_p.size());
        for (std::size_t k = 0; k < n.size(); ++k) n[k] = st.n_p[k] + st.n_d[k];
        return n;
    };
    auto diag_state = [&](const TwoSpeciesState& st) {
        SimState view{st.t, total_of(st), st.c};
        if (!view.c) view.c = solve_nutrient(view.n, pb.nutrient, grid, support_tolerance(view.n));
        return view;
    };
    auto snap = [&](long step, const TwoSpeciesState& st, const SimState& view) {
        snapshot1d(out, step, grid, pb.law,
                   {{"n", &view.n}, {"c", &*view.c}, {"n_p", &st.n_p}, {"n_d", &st.n_d}});
    };

    CsvWriter diag(out.add("diagnostics.csv"), diagnostics_header(false));
    InvariantMonitor mon(cfg.dt, growth_sup(pb.growth), std::nullopt, false);
    SimState prev_view = diag_state(s);
    {
        const DiagnosticsRecord r0 = record(prev_view, nullptr, grid, pb.law, pb.growth);
        mon.observe(0, prev_view.n, r0);
        diag.row(diagnostics_row(r0, false));
        snap(0, s, prev_view);
    }
    const long steps = std::lround(cfg.t_end / cfg.dt);
    double min_species = 0.0;
    for (long k = 0; k < steps; ++k) {
        const long step = k + 1;
        const bool final = step == steps;
        try {
            s = step_twospecies(s, pb);
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " at step " + std::to_string(k), e.iterate(), k);
        }
        s.t = static_cast<double>(step) * cfg.dt;
        for (std::size_t i = 0; i < grid.size(); ++i)
            min_species = std::min({min_species, s.n_p[i], s.n_d[i]});
        SimState view{s.t, total_of(s), s.c};
        const DiagnosticsRecord r = record(view, &prev_view, grid, pb.law, pb.growth);
        mon.observe(step, view.n, r);
        if (row_due(step, final, cfg.cadence)) diag.row(diagnostics_row(r, false));
        if (snapshot_due(step, final, cfg.snapshot_every)) snap(step, s, view);
        prev_view = std::move(view);
    }

    Field p(grid.size());
    pressure_into(prev_view.n, pb.law, p);
    const double xf = front_position(p, grid);
    const std::size_t centre = grid.size() / 2;
    double np_front = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (std::abs(std::abs(grid.x(k)) - xf) <= 5.0 * grid.dx * (1.0 + 1e-12))
            np_front = std::max(np_front, s.n_p[k]);
    result.metrics["front_position"] = xf;
    result.metrics["centre_n_d"] = s.n_d[centre];
    result.metrics["centre_n_p"] = s.n_p[centre];
    result.metrics["front_n_p_max"] = np_front;
    result.metrics["min_species"] = min_species;
    result.metrics["mass_final"] = record(prev_view, nullptr, grid, pb.law, pb.growth).mass;
    result.violations = mon.violations();
    if (min_species < -1e-14) result.violations.push_back("negative species density");
    result.metrics["max_density"] = mon.max_density();
}

void run_focusing(const SimConfig& cfg, Output& out, RunResult& result) {
    const Grid2D grid(cfg.x_max, cfg.x_max, cfg.dx);
    Problem2D pb{grid, PressureLaw(cfg.gamma, cfg.kappa), cfg.growth(), cfg.step_params()};
    const double p_h = cfg.p_h;
    Field n = shell_initial(grid, cfg.shell_inner, cfg.shell_outer, cfg.shell_density);

    CsvWriter diag(out.add("diagnostics.csv"), diagnostics_header(true));
    InvariantMonitor mon(cfg.dt, growth_sup(pb.growth), homeostatic_density(pb.growth, pb.law), false);
    std::vector<DiagnosticsRecord> series;
    DiagnosticsRecord r0 = record2d(0.0, n, nullptr, 0.0, grid, pb.law, pb.growth, kLqOrders);
    mon.observe(0, n, r0);
    diag.row(diagnostics_row(r0, true));
    snapshot2d(out, 0, grid, pb.law, n);
    series.push_back(r0);

    const long steps = std::lround(cfg.t_end / cfg.dt);
    double focus_time = kInf;
    Step2DStats stats;
    Field p(n.size());
    for (long k = 0; k < steps; ++k) {
        const long step = k + 1;
        const bool final = step == steps;
        Field next;
        try {
            next = step2d(n, pb, &stats);
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " at step " + std::to_string(k), e.iterate(), k);
        }
        const double t = static_cast<double>(step) * cfg.dt;
        const DiagnosticsRecord r =
            record2d(t, next, &n, t - cfg.dt, grid, pb.law, pb.growth, kLqOrders);
        mon.observe(step, next, r);
        series.push_back(r);
        pressure_into(next, pb.law, p);
        if (!std::isfinite(focus_time) && min_near_origin(p, grid, 2.0 * grid.dx()) > 1e-6 * p_h)
            focus_time = t;
        if (row_due(step, final, cfg.cadence)) diag.row(diagnostics_row(r, true));
        if (snapshot_due(step, final, cfg.snapshot_every)) snapshot2d(out, step, grid, pb.law, next);
        n = std::move(next);
    }

    result.metrics["focusing_time"] = focus_time;
    result.metrics["newton_iterations"] = static_cast<double>(stats.newton_iterations);
    result.metrics["gauss_seidel_fallbacks"] = static_cast<double>(stats.gauss_seidel_fallbacks);
    if (std::isfinite(focus_time)) {
        constexpr double kBaselineEnd = 0.3;
        constexpr double kPeakHalfWidth = 0.05;
        for (double q : kLqOrders) {
            std::vector<double> base;
            double peak = 0.0;
            for (const auto& r : series) {
                const double v = r.lq_grad_norms.at(q);
                if (r.t > 0.0 && r.t < kBaselineEnd) base.push_back(v);
                if (std::abs(r.t - focus_time) <= kPeakHalfWidth) peak = std::max(peak, v);
            }
            if (base.empty()) continue;
            std::nth_element(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(base.size() / 2), base.end());
            const double median = base[base.size() / 2];
            const std::string tag = std::isinf(q) ? "inf" : std::to_string(static_cast<int>(q));
            result.metrics["ratio_q" + tag] = peak / median;
        }
    }
    result.violations = mon.violations();
    result.metrics["max_density"] = mon.max_density();
    result.metrics["min_density"] = mon.min_density();
}

void run_ap_sweep(const SimConfig& cfg, Output& out, RunResult& result) {
    std::vector<ComplementarityTotals> totals(cfg.gammas.size());
    std::vector<std::string> errors(cfg.gammas.size());
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), cfg.gammas.size()));
    std::size_t next = 0;
    std::mutex lock;
    auto work = [&] {
        while (true) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> g(lock);
                if (next >= cfg.gammas.size()) return;
                i = next++;
            }
            try {
                totals[i] = ap_run(cfg, cfg.gammas[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw SolverError("ap sweep at gamma " + format_real(cfg.gammas[i]) + ": " + errors[i], {});

    CsvWriter w(out.add("ap_sweep.csv"), {"gamma", "comp_residual_integral", "comp_residual_sup"});
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        w.row({cfg.gammas[i], totals[i].integral, totals[i].sup});
        result.sweep.push_back({cfg.gammas[i], totals[i].integral, totals[i].sup});
        xs.push_back(cfg.gammas[i]);
        ys.push_back(totals[i].integral);
        result.metrics["comp_integral@" + format_real(cfg.gammas[i])] = totals[i].integral;
    }
    result.metrics["loglog_slope"] = loglog_slope(xs, ys);
    for (std::size_t i = 1; i < totals.size(); ++i) {
        if (!(totals[i].integral < totals[i - 1].integral)) {
            result.violations.push_back("complementarity integral not decreasing between gamma " +
                                        format_real(cfg.gammas[i - 1]) + " and " +
                                        format_real(cfg.gammas[i]));
        }
    }
}

}  // namespace

Field barenblatt_initial(const Grid1D& grid, double gamma, double c, double t0) {
    Field n(grid.size());
    for (std::size_t k = 0; k < n.size(); ++k) n[k] = barenblatt(grid.x(k), t0, gamma, c);
    return n;
}

Field nutrient_initial(const Grid1D& grid, double gamma, double r0, double c_b, double g0, bool vivo) {
    Field n(grid.size());
    for (std::size_t k = 0; k < n.size(); ++k) {
        const double p = vivo ? vivo_exact(grid.x(k), r0, c_b, g0).p : vitro_exact(grid.x(k), r0, c_b).p;
        n[k] = p > 0.0 ? std::pow(p, 1.0 / gamma) : 0.0;
    }
    return n;
}

Field shell_initial(const Grid2D& grid, double inner, double outer, double value) {
    Field n(grid.size(), 0.0);
    for (std::size_t j = 0; j < grid.ny(); ++j)
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double r = std::hypot(grid.x(i), grid.y(j));
            if (r > inner && r < outer) n[grid.index(i, j)] = value;
        }
    return n;
}

double front_position(std::span<const double> p, const Grid1D& grid, double threshold) {
    for (std::size_t k = p.size(); k-- > 0;)
        if (p[k] > threshold) return grid.x(k);
    return std::numeric_limits<double>::quiet_NaN();
}

double front_error(std::span<const double> p, const Grid1D& grid, double radius, double threshold) {
    std::optional<std::size_t> left, right;
    for (std::size_t k = 0; k < p.size() && !left; ++k)
        if (p[k] > threshold) left = k;
    for (std::size_t k = p.size(); k-- > 0 && !right;)
        if (p[k] > threshold) right = k;
    if (!left || !right) return kInf;
    return std::max(std::abs(grid.x(*right) - radius), std::abs(-grid.x(*left) - radius));
}

InvariantMonitor::InvariantMonitor(double dt, double g_sup, std::optional<double> n_h,
                                   bool check_variation)
    : dt_(dt), g_sup_(g_sup), n_h_(n_h), check_variation_(check_variation) {}

void InvariantMonitor::fail(const std::string& what) {
    constexpr std::size_t kMaxReported = 20;
    if (violations_.size() < kMaxReported) violations_.push_back(what);
}

void InvariantMonitor::observe(long step, std::span<const double> n, const DiagnosticsRecord& rec) {
    constexpr double kSlack = 1e-8;
    const auto [lo, hi] = std::minmax_element(n.begin(), n.end());
    min_n_ = std::min(min_n_, *lo);
    max_n_ = std::max(max_n_, *hi);
    const std::string at = " at step " + std::to_string(step);
    if (*lo < -1e-14) fail("negative density " + format_real(*lo) + at);
    if (n_h_ && *hi > *n_h_ + 1e-10) fail("density above n_H: " + format_real(*hi) + at);

    const double factor = g_sup_ > 0.0 ? std::pow(1.0 - dt_ * g_sup_, -static_cast<double>(step)) : 1.0;
    if (!mass0_) mass0_ = rec.mass;
    mass_margin_ = std::min(mass_margin_, factor * *mass0_ + kSlack - rec.mass);
    if (rec.mass > factor * *mass0_ + kSlack) fail("mass above its geometric bound" + at);
    if (!check_variation_) return;
    if (!bv0_) bv0_ = rec.bv;
    if (rec.bv > factor * *bv0_ + kSlack) fail("BV above its geometric bound" + at);
    if (rec.dt_l1) {
        if (!dtl1_0_) dtl1_0_ = *rec.dt_l1;
        if (*rec.dt_l1 > factor * *dtl1_0_ + kSlack) fail("time derivative above its geometric bound" + at);
    }
}

ComplementarityTotals ap_run(const SimConfig& cfg, double gamma) {
    const ImplicitProblem pb = problem_of(cfg, gamma, cfg.kappa);
    const bool vivo = cfg.nutrient == "vivo";
    const NutrientModel model = nutrient_model(cfg, vivo);
    const Grid1D& grid = pb.grid;
    SimState s0{0.0, nutrient_initial(grid, gamma, cfg.r0, cfg.c_b, cfg.g0, vivo), std::nullopt};
    ComplementarityTotals totals;
    AdvanceHooks hooks;
    hooks.nutrient = [&](const Field& n) { return solve_nutrient(n, model, grid, support_tolerance(n)); };
    hooks.on_step = [&](const SimState& prev, const SimState& next, long) {
        totals.add(complementarity_residual(next.n, next.c, grid, pb.law, pb.growth), next.t - prev.t);
    };
    advance(s0, cfg.t_end, pb, hooks);
    return totals;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) return std::numeric_limits<double>::quiet_NaN();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

RunResult run_experiment(const SimConfig& config, const fs::path& out_dir) {
    validate(config);
    Output out(out_dir);
    RunResult result;
    ManifestData data;
    try {
        switch (config.experiment) {
        case Experiment::Barenblatt: run_barenblatt(config, out, result); break;
        case Experiment::Vitro: run_nutrient(config, false, out, result); break;
        case Experiment::Vivo: run_nutrient(config, true, out, result); break;
        case Experiment::TwoSpecies: run_twospecies(config, out, result); break;
        case Experiment::Focusing: run_focusing(config, out, result); break;
        case Experiment::ApSweep: run_ap_sweep(config, out, result); break;
        }
    } catch (const SolverError& e) {
        data.status = "solver_failure";
        data.message = e.what();
        data.metrics = result.metrics;
        write_manifest(out.dir(), config, out.files(), data);
        throw;
    }
    if (!result.violations.empty()) data.status = "invariant_violation";
    data.metrics = result.metrics;
    result.files = out.files();
    write_manifest(out.dir(), config, out.files(), data);
    result.files.push_back(out.dir() / "manifest");
    return result;
}

}  // namespace pmfd
