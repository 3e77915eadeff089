#include "kernels_impl.hpp"

#include <algorithm>

namespace esmf::kernels::detail {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double positive_sum(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::max(v[i], 0.0);
    return s;
}

double positive_sq_sum(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = std::max(v[i], 0.0);
        s += p * p;
    }
    return s;
}

void clamp(const double* x, const double* lo, const double* hi, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::min(std::max(x[i], lo[i]), hi[i]);
}

void gemv(const double* a, const double* x, double* y, std::size_t n) {
    std::fill(y, y + n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = x[j];
        const double* col = a + j * n;
        for (std::size_t i = 0; i < n; ++i) y[i] += col[i] * xj;
    }
}

void rank_one(double alpha, const double* v, double* a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double s = alpha * v[j];
        double* col = a + j * n;
        for (std::size_t i = 0; i < n; ++i) col[i] += s * v[i];
    }
}

}  // namespace

const Backend& scalar_table() {
    static const Backend table{"scalar", dot, axpy, positive_sum, positive_sq_sum, clamp, gemv, rank_one};
    return table;
}

}  // namespace esmf::kernels::detail
