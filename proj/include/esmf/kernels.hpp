#pragma once

// Dense arithmetic kernels used by the evolution-strategy engine.
//
// Every kernel has a scalar reference implementation. An AVX2/FMA variant is
// compiled alongside and picked at runtime when the CPU supports it. The
// selection can be forced with the ESMF_KERNELS environment variable
// ("scalar", "avx2" or "auto") or programmatically with select_backend().
//
// Matrices are dense, column-major, n x n.

#include <cstddef>
#include <span>
#include <string_view>

namespace esmf::kernels {

struct Backend {
    std::string_view name;

    double (*dot)(const double* a, const double* b, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // sum_i max(v_i, 0)
    double (*positive_sum)(const double* v, std::size_t n);
    // sum_i max(v_i, 0)^2
    double (*positive_sq_sum)(const double* v, std::size_t n);
    // out_i = min(max(x_i, lo_i), hi_i)
    void (*clamp)(const double* x, const double* lo, const double* hi, double* out, std::size_t n);
    // y = A x
    void (*gemv)(const double* a, const double* x, double* y, std::size_t n);
    // A += alpha * v v^T (full matrix, both triangles)
    void (*rank_one)(double alpha, const double* v, double* a, std::size_t n);
};

enum class BackendKind { Auto, Scalar, Avx2 };

const Backend& scalar_backend();

// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const Backend* avx2_backend();

const Backend& active_backend();

// Returns false (and leaves the selection unchanged) if the requested backend
// is unavailable. Not thread-safe with respect to concurrent kernel calls.
bool select_backend(BackendKind kind);

// Thin span wrappers over the active backend.
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double positive_sum(std::span<const double> v);
double positive_sq_sum(std::span<const double> v);
void clamp(std::span<const double> x, std::span<const double> lo, std::span<const double> hi,
           std::span<double> out);
void gemv(std::span<const double> a, std::span<const double> x, std::span<double> y);
void rank_one(double alpha, std::span<const double> v, std::span<double> a);

}  // namespace esmf::kernels
