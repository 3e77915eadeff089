// Compiled with -mavx2 -mfma on x86-64. Only intrinsics and plain loops live
// here so that no inline library code is emitted with AVX2 encodings.

#include "kernels_impl.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace esmf::kernels::detail {

namespace {

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

// max_pd(0, v) keeps NaN in v, matching the scalar std::max(v, 0.0).
double positive_sum(const double* v, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_max_pd(zero, _mm256_loadu_pd(v + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += v[i] < 0.0 ? 0.0 : v[i];
    return s;
}

double positive_sq_sum(const double* v, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = zero;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d p = _mm256_max_pd(zero, _mm256_loadu_pd(v + i));
        acc = _mm256_fmadd_pd(p, p, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double p = v[i] < 0.0 ? 0.0 : v[i];
        s += p * p;
    }
    return s;
}

void clamp(const double* x, const double* lo, const double* hi, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t = _mm256_max_pd(_mm256_loadu_pd(lo + i), _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(hi + i), t));
    }
    for (; i < n; ++i) {
        const double t = x[i] < lo[i] ? lo[i] : x[i];
        out[i] = hi[i] < t ? hi[i] : t;
    }
}

void gemv(const double* a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = 0.0;
    for (std::size_t j = 0; j < n; ++j) axpy(x[j], a + j * n, y, n);
}

void rank_one(double alpha, const double* v, double* a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) axpy(alpha * v[j], v, a + j * n, n);
}

}  // namespace

const Backend* avx2_table() {
    static const Backend table{"avx2", dot, axpy, positive_sum, positive_sq_sum, clamp, gemv, rank_one};
    return &table;
}

}  // namespace esmf::kernels::detail

#else

namespace esmf::kernels::detail {
const Backend* avx2_table() { return nullptr; }
}  // namespace esmf::kernels::detail

#endif
