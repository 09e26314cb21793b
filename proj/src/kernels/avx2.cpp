#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "pmfd/kernels.hpp"

namespace pmfd::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline __m256d ipow_pd(__m256d x, unsigned e) {
    __m256d result = _mm256_set1_pd(1.0);
    __m256d base = x;
    while (e != 0) {
        if (e & 1u) result = _mm256_mul_pd(result, base);
        e >>= 1;
        if (e != 0) base = _mm256_mul_pd(base, base);
    }
    return result;
}

inline double hsum(__m256d v) {
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, v);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void int_pow(const double* x, std::size_t n, unsigned e, double scale, double* out) {
    const __m256d s = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(s, ipow_pd(_mm256_loadu_pd(x + i), e)));
    for (; i < n; ++i) out[i] = scale * ipow(x[i], e);
}

void face_diff(const double* p, std::size_t n_faces, double dx, double* out) {
    const __m256d h = _mm256_set1_pd(dx);
    std::size_t i = 0;
    for (; i + kLanes <= n_faces; i += kLanes) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i + 1), _mm256_loadu_pd(p + i));
        _mm256_storeu_pd(out + i, _mm256_div_pd(d, h));
    }
    for (; i < n_faces; ++i) out[i] = (p[i + 1] - p[i]) / dx;
}

void upwind_flux(const double* v, const double* q, std::size_t n_faces, double* out) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + kLanes <= n_faces; i += kLanes) {
        const __m256d qv = _mm256_loadu_pd(q + i);
        // max_pd returns its second operand on ties, so -0 maps to +0 like the scalar branch.
        const __m256d qp = _mm256_max_pd(qv, zero);
        const __m256d qm = _mm256_max_pd(_mm256_xor_pd(qv, sign), zero);
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(v + i + 1), qp);
        const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(v + i), qm);
        _mm256_storeu_pd(out + i, _mm256_sub_pd(a, b));
    }
    for (; i < n_faces; ++i) {
        const double qp = q[i] > 0.0 ? q[i] : 0.0;
        const double qm = q[i] < 0.0 ? -q[i] : 0.0;
        out[i] = v[i + 1] * qp - v[i] * qm;
    }
}

template <class Lane, class Tail>
double reduce_sum(std::size_t n, Lane lane, Tail tail) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) acc = _mm256_add_pd(acc, lane(i));
    double s = hsum(acc);
    for (; i < n; ++i) s += tail(i);
    return s;
}

double sum(const double* x, std::size_t n) {
    return reduce_sum(
        n, [x](std::size_t i) { return _mm256_loadu_pd(x + i); }, [x](std::size_t i) { return x[i]; });
}

double sum_abs(const double* x, std::size_t n) {
    return reduce_sum(
        n, [x](std::size_t i) { return abs_pd(_mm256_loadu_pd(x + i)); },
        [x](std::size_t i) { return std::abs(x[i]); });
}

double sum_sq(const double* x, std::size_t n) {
    return reduce_sum(
        n,
        [x](std::size_t i) {
            const __m256d v = _mm256_loadu_pd(x + i);
            return _mm256_mul_pd(v, v);
        },
        [x](std::size_t i) { return x[i] * x[i]; });
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    return reduce_sum(
        n,
        [a, b](std::size_t i) {
            return abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        },
        [a, b](std::size_t i) { return std::abs(a[i] - b[i]); });
}

double sum_abs_pow(const double* x, std::size_t n, unsigned e) {
    return reduce_sum(
        n, [x, e](std::size_t i) { return ipow_pd(abs_pd(_mm256_loadu_pd(x + i)), e); },
        [x, e](std::size_t i) { return ipow(std::abs(x[i]), e); });
}

double max_abs(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, acc);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{"avx2",   int_pow, face_diff,    upwind_flux, sum,
                                   sum_abs,  sum_sq,  sum_abs_diff, sum_abs_pow, max_abs};
    return table;
}

}  // namespace pmfd::kernels
