#pragma once

#include <cstddef>

namespace pmfd::kernels {

/// x^e by binary exponentiation. The SIMD kernels replicate this exact
/// multiplication order.
inline double ipow(double x, unsigned e) noexcept {
    double result = 1.0;
    double base = x;
    while (e != 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return result;
}

/// Data-parallel inner loops. Every table computes the elementwise kernels
/// with the same operation order, so their results are bit-identical across
/// instruction sets. Reductions may differ by summation order only.
struct KernelTable {
    const char* name;

    /// out[i] = scale * x[i]^e, binary exponentiation.
    void (*int_pow)(const double* x, std::size_t n, unsigned e, double scale, double* out);
    /// out[i] = (p[i+1] - p[i]) / dx for i < n_faces.
    void (*face_diff)(const double* p, std::size_t n_faces, double dx, double* out);
    /// out[i] = v[i+1]*max(q[i],0) - v[i]*max(-q[i],0) for i < n_faces.
    void (*upwind_flux)(const double* v, const double* q, std::size_t n_faces, double* out);

    double (*sum)(const double* x, std::size_t n);
    double (*sum_abs)(const double* x, std::size_t n);
    double (*sum_sq)(const double* x, std::size_t n);
    /// sum |a[i] - b[i]|
    double (*sum_abs_diff)(const double* a, const double* b, std::size_t n);
    /// sum |x[i]|^e
    double (*sum_abs_pow)(const double* x, std::size_t n, unsigned e);
    double (*max_abs)(const double* x, std::size_t n);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// Table chosen once per process: AVX2 when available, unless the
/// PMFD_KERNELS environment variable is set to "scalar".
const KernelTable& active();

}  // namespace pmfd::kernels
