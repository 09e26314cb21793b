#include "pmfd/nutrient.hpp"

#include <algorithm>
#include <stdexcept>

#include "pmfd/tridiagonal.hpp"

namespace pmfd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_sizes(std::span<const double> n, const Grid1D& grid) {
    if (n.size() != grid.size()) throw std::invalid_argument("nutrient: field/grid size mismatch");
}

}  // namespace

double nutrient_level(const NutrientModel& model) {
    return std::visit([](const auto& m) { return m.c_b; }, model);
}

SupportMask support_mask(std::span<const double> n, double tol_supp) {
    if (tol_supp < 0.0) throw std::invalid_argument("support_mask: negative tolerance");
    SupportMask mask;
    mask.inside.resize(n.size());
    std::size_t k = 0;
    while (k < n.size()) {
        if (!(n[k] > tol_supp)) {
            ++k;
            continue;
        }
        const std::size_t first = k;
        while (k < n.size() && n[k] > tol_supp) mask.inside[k++] = 1;
        mask.components.emplace_back(first, k);
    }
    return mask;
}

double support_tolerance(std::span<const double> n, double scale) {
    if (scale <= 0.0 && !n.empty()) scale = *std::max_element(n.begin(), n.end());
    return 1e-8 * std::max(scale, 0.0);
}

Field solve_vitro(std::span<const double> n, const InVitro& model, const Grid1D& grid,
                  double tol_supp) {
    check_sizes(n, grid);
    const std::size_t size = n.size();
    Field c(size, model.c_b);
    const SupportMask mask = support_mask(n, tol_supp);
    const double h2 = grid.dx * grid.dx;
    Field lower, diag, upper, rhs;
    for (auto [first, last] : mask.components) {
        const std::size_t m = last - first;
        lower.assign(m - 1, -1.0);
        upper.assign(m - 1, -1.0);
        diag.resize(m);
        rhs.assign(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) diag[j] = 2.0 + h2 * model.psi(n[first + j]);
        // Dirichlet neighbour, or a zero-flux face at the domain edge.
        if (first > 0)
            rhs[0] += model.c_b;
        else
            diag[0] -= 1.0;
        if (last < size)
            rhs[m - 1] += model.c_b;
        else
            diag[m - 1] -= 1.0;
        const Field sol = thomas_solve(lower, diag, upper, rhs);
        std::copy(sol.begin(), sol.end(), c.begin() + static_cast<std::ptrdiff_t>(first));
    }
    return c;
}

Field solve_vivo(std::span<const double> n, const InVivo& model, const Grid1D& grid,
                 double tol_supp) {
    check_sizes(n, grid);
    const std::size_t size = n.size();
    Field c(size, model.c_b);
    if (size < 3) return c;
    const SupportMask mask = support_mask(n, tol_supp);
    const double h2 = grid.dx * grid.dx;
    const std::size_t m = size - 2;
    Field lower(m - 1, -1.0), upper(m - 1, -1.0), diag(m), rhs(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = j + 1;
        const double supply = mask.inside[k] ? 0.0 : 1.0;
        diag[j] = 2.0 + h2 * (model.psi(n[k]) + supply);
        rhs[j] = h2 * supply * model.c_b;
    }
    rhs[0] += model.c_b;
    rhs[m - 1] += model.c_b;
    const Field sol = thomas_solve(lower, diag, upper, rhs);
    std::copy(sol.begin(), sol.end(), c.begin() + 1);
    return c;
}

Field solve_nutrient(std::span<const double> n, const NutrientModel& model, const Grid1D& grid,
                     double tol_supp) {
    return std::visit(overloaded{
                          [&](const InVitro& m) { return solve_vitro(n, m, grid, tol_supp); },
                          [&](const InVivo& m) { return solve_vivo(n, m, grid, tol_supp); },
                      },
                      model);
}

}  // namespace pmfd
