#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "esmf/kernels.hpp"

namespace k = esmf::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, scale);
    std::vector<double> v(n);
    for (double& x : v) x = nd(gen);
    return v;
}

// Relative agreement allowing for FMA contraction and reordered sums.
bool close(double a, double b, double magnitude) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, magnitude);
}

double abs_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] * b[i]);
    return s;
}

}  // namespace

TEST_CASE("scalar kernels on hand-checked inputs") {
    const k::Backend& s = k::scalar_backend();
    const double a[] = {1, 2, 3};
    const double b[] = {4, -5, 6};
    CHECK(s.dot(a, b, 3) == 12.0);

    double y[] = {1, 1, 1};
    s.axpy(2.0, a, y, 3);
    CHECK(y[0] == 3.0);
    CHECK(y[2] == 7.0);

    const double v[] = {0.5, -1.0, 2.0};
    CHECK(s.positive_sum(v, 3) == 2.5);
    CHECK(s.positive_sq_sum(v, 3) == 4.25);
    CHECK(s.positive_sum(v, 0) == 0.0);

    const double x[] = {-2, 0.5, 3};
    const double lo[] = {0, 0, 0};
    const double hi[] = {1, 1, 1};
    double out[3];
    s.clamp(x, lo, hi, out, 3);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.5);
    CHECK(out[2] == 1.0);

    // column-major [[1, 2], [3, 4]]
    const double m[] = {1, 3, 2, 4};
    const double xv[] = {1, 1};
    double yv[2];
    s.gemv(m, xv, yv, 2);
    CHECK(yv[0] == 3.0);
    CHECK(yv[1] == 7.0);

    double r[] = {0, 0, 0, 0};
    const double u[] = {1, 2};
    s.rank_one(0.5, u, r, 2);
    CHECK(r[0] == 0.5);
    CHECK(r[1] == 1.0);
    CHECK(r[2] == 1.0);
    CHECK(r[3] == 2.0);
}

TEST_CASE("active backend is reported and switchable") {
    CHECK(k::select_backend(k::BackendKind::Scalar));
    CHECK(k::active_backend().name == "scalar");
    if (k::avx2_backend() != nullptr) {
        CHECK(k::select_backend(k::BackendKind::Avx2));
        CHECK(k::active_backend().name == k::avx2_backend()->name);
    } else {
        CHECK_FALSE(k::select_backend(k::BackendKind::Avx2));
        CHECK(k::active_backend().name == "scalar");
    }
    CHECK(k::select_backend(k::BackendKind::Auto));
    const k::Backend* expected = k::avx2_backend() ? k::avx2_backend() : &k::scalar_backend();
    CHECK(k::active_backend().name == expected->name);
}

TEST_CASE("span wrappers route through the selected backend") {
    std::mt19937_64 gen(3);
    const auto a = random_vector(gen, 11);
    const auto b = random_vector(gen, 11);
    REQUIRE(k::select_backend(k::BackendKind::Scalar));
    CHECK(k::dot(a, b) == k::scalar_backend().dot(a.data(), b.data(), a.size()));
    if (const k::Backend* v = k::avx2_backend()) {
        REQUIRE(k::select_backend(k::BackendKind::Avx2));
        CHECK(k::dot(a, b) == v->dot(a.data(), b.data(), a.size()));
    }
    REQUIRE(k::select_backend(k::BackendKind::Auto));
}

TEST_CASE("AVX2 variants match the scalar reference") {
    const k::Backend* v = k::avx2_backend();
    if (v == nullptr) {
        MESSAGE("AVX2/FMA unavailable; equivalence not exercised on this host");
        return;
    }
    const k::Backend& s = k::scalar_backend();
    std::mt19937_64 gen(7);

    // Sizes straddle the 4-lane width and the unrolled block.
    for (std::size_t n = 0; n <= 37; ++n) {
        CAPTURE(n);
        for (int rep = 0; rep < 20; ++rep) {
            const auto a = random_vector(gen, n, 10.0);
            const auto b = random_vector(gen, n, 10.0);

            CHECK(close(s.dot(a.data(), b.data(), n), v->dot(a.data(), b.data(), n), abs_dot(a, b)));

            auto y1 = b, y2 = b;
            s.axpy(-1.7, a.data(), y1.data(), n);
            v->axpy(-1.7, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i], std::abs(a[i]) * 1.7 + std::abs(b[i])));

            double mag = 0.0, mag2 = 0.0;
            for (double x : a) {
                mag += std::abs(x);
                mag2 += x * x;
            }
            CHECK(close(s.positive_sum(a.data(), n), v->positive_sum(a.data(), n), mag));
            CHECK(close(s.positive_sq_sum(a.data(), n), v->positive_sq_sum(a.data(), n), mag2));

            std::vector<double> lo(n, -3.0), hi(n, 4.0), o1(n), o2(n);
            s.clamp(a.data(), lo.data(), hi.data(), o1.data(), n);
            v->clamp(a.data(), lo.data(), hi.data(), o2.data(), n);
            CHECK(o1 == o2);
        }
    }

    for (std::size_t n = 1; n <= 19; ++n) {
        CAPTURE(n);
        const auto m = random_vector(gen, n * n);
        const auto x = random_vector(gen, n);
        std::vector<double> y1(n), y2(n);
        s.gemv(m.data(), x.data(), y1.data(), n);
        v->gemv(m.data(), x.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            double mag = 0.0;
            for (std::size_t j = 0; j < n; ++j) mag += std::abs(m[j * n + i] * x[j]);
            CHECK(close(y1[i], y2[i], mag));
        }

        auto r1 = m, r2 = m;
        s.rank_one(0.3, x.data(), r1.data(), n);
        v->rank_one(0.3, x.data(), r2.data(), n);
        for (std::size_t i = 0; i < n * n; ++i) CHECK(close(r1[i], r2[i], std::abs(m[i]) + 0.3 * 10.0));
    }
}

TEST_CASE("positive sums ignore non-positive entries on every backend") {
    std::vector<const k::Backend*> backends{&k::scalar_backend()};
    if (k::avx2_backend() != nullptr) backends.push_back(k::avx2_backend());
    for (const k::Backend* b : backends) {
        CAPTURE(b->name);
        std::vector<double> v(13, -1.0);
        CHECK(b->positive_sum(v.data(), v.size()) == 0.0);
        CHECK(b->positive_sq_sum(v.data(), v.size()) == 0.0);
        v[12] = 3.0;
        CHECK(b->positive_sum(v.data(), v.size()) == 3.0);
        CHECK(b->positive_sq_sum(v.data(), v.size()) == 9.0);
    }
}
