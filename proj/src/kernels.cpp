#include "esmf/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace esmf::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend* resolve(BackendKind kind) {
    switch (kind) {
        case BackendKind::Scalar:
            return &detail::scalar_table();
        case BackendKind::Avx2:
            return avx2_backend();
        case BackendKind::Auto:
            if (const Backend* b = avx2_backend()) return b;
            return &detail::scalar_table();
    }
    return &detail::scalar_table();
}

BackendKind kind_from_env() {
    const char* env = std::getenv("ESMF_KERNELS");
    if (env == nullptr) return BackendKind::Auto;
    const std::string v(env);
    if (v == "scalar") return BackendKind::Scalar;
    if (v == "avx2") return BackendKind::Avx2;
    return BackendKind::Auto;
}

std::atomic<const Backend*>& active_slot() {
    static std::atomic<const Backend*> slot{[] {
        const Backend* b = resolve(kind_from_env());
        return b != nullptr ? b : &detail::scalar_table();
    }()};
    return slot;
}

}  // namespace

const Backend& scalar_backend() { return detail::scalar_table(); }

const Backend* avx2_backend() {
    static const Backend* b = cpu_has_avx2() ? detail::avx2_table() : nullptr;
    return b;
}

const Backend& active_backend() { return *active_slot().load(std::memory_order_acquire); }

bool select_backend(BackendKind kind) {
    const Backend* b = resolve(kind);
    if (b == nullptr) return false;
    active_slot().store(b, std::memory_order_release);
    return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return active_backend().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    active_backend().axpy(alpha, x.data(), y.data(), x.size());
}

double positive_sum(std::span<const double> v) { return active_backend().positive_sum(v.data(), v.size()); }

double positive_sq_sum(std::span<const double> v) {
    return active_backend().positive_sq_sum(v.data(), v.size());
}

void clamp(std::span<const double> x, std::span<const double> lo, std::span<const double> hi,
           std::span<double> out) {
    assert(x.size() == lo.size() && x.size() == hi.size() && x.size() == out.size());
    active_backend().clamp(x.data(), lo.data(), hi.data(), out.data(), x.size());
}

void gemv(std::span<const double> a, std::span<const double> x, std::span<double> y) {
    assert(a.size() == x.size() * x.size() && y.size() == x.size());
    active_backend().gemv(a.data(), x.data(), y.data(), x.size());
}

void rank_one(double alpha, std::span<const double> v, std::span<double> a) {
    assert(a.size() == v.size() * v.size());
    active_backend().rank_one(alpha, v.data(), a.data(), v.size());
}

}  // namespace esmf::kernels
