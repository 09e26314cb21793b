#include <algorithm>
#include <cmath>

#include "pmfd/kernels.hpp"

namespace pmfd::kernels {

namespace {

void int_pow(const double* x, std::size_t n, unsigned e, double scale, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = scale * ipow(x[i], e);
}

void face_diff(const double* p, std::size_t n_faces, double dx, double* out) {
    for (std::size_t i = 0; i < n_faces; ++i) out[i] = (p[i + 1] - p[i]) / dx;
}

void upwind_flux(const double* v, const double* q, std::size_t n_faces, double* out) {
    for (std::size_t i = 0; i < n_faces; ++i) {
        const double qp = q[i] > 0.0 ? q[i] : 0.0;
        const double qm = q[i] < 0.0 ? -q[i] : 0.0;
        out[i] = v[i + 1] * qp - v[i] * qm;
    }
}

double sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double sum_abs(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
    return s;
}

double sum_sq(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double sum_abs_pow(const double* x, std::size_t n, unsigned e) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += ipow(std::abs(x[i]), e);
    return s;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar",  int_pow, face_diff,    upwind_flux, sum,
                                   sum_abs,   sum_sq,  sum_abs_diff, sum_abs_pow, max_abs};
    return table;
}

}  // namespace pmfd::kernels
