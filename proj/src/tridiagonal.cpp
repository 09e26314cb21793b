#include "pmfd/tridiagonal.hpp"

#include <stdexcept>
#include <string>

#include "pmfd/errors.hpp"

namespace pmfd {

void thomas_solve_into(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<const double> rhs,
                       std::span<double> scratch, std::span<double> x) {
    const std::size_t n = diag.size();
    if (n == 0) return;
    if (lower.size() + 1 != n || upper.size() + 1 != n || rhs.size() != n || x.size() != n ||
        scratch.size() < n)
        throw std::invalid_argument("thomas_solve: inconsistent sizes");

    double pivot = diag[0];
    if (pivot == 0.0) throw DomainError("thomas_solve: zero pivot at row 0", 0);
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        scratch[i - 1] = upper[i - 1] / pivot;
        pivot = diag[i] - lower[i - 1] * scratch[i - 1];
        if (pivot == 0.0)
            throw DomainError("thomas_solve: zero pivot at row " + std::to_string(i), i);
        x[i] = (rhs[i] - lower[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
}

Field thomas_solve(std::span<const double> lower, std::span<const double> diag,
                   std::span<const double> upper, std::span<const double> rhs) {
    Field x(diag.size());
    Field scratch(diag.size());
    thomas_solve_into(lower, diag, upper, rhs, scratch, x);
    return x;
}

}  // namespace pmfd
