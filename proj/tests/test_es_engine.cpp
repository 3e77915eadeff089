#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "esmf/errors.hpp"
#include "esmf/es_engine.hpp"

using namespace esmf;

namespace {

double dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

bool symmetric(const DistributionState& ds, double tol) {
    const std::size_t n = ds.dimension();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(ds.cov(i, j) - ds.cov(j, i)) > tol) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("default_population") {
    CHECK(default_population(1).lambda == 4);
    CHECK(default_population(1).mu == 2);
    // floor(3 ln 2) = floor(2.079) = 2
    CHECK(default_population(2).lambda == 6);
    CHECK(default_population(2).mu == 3);
    // floor(3 ln 13) = floor(7.695) = 7
    CHECK(default_population(13).lambda == 11);
    CHECK(default_population(13).mu == 5);
    CHECK_THROWS_AS(default_population(0), ConfigError);
}

TEST_CASE("default_weights against hand-evaluated values") {
    // a_i = ln 3.5 - ln i = (1.25276, 0.55962, 0.15415), sum 1.96653
    const RecombinationWeights w6 = default_weights(6, 3);
    REQUIRE(w6.size() == 3);
    CHECK(w6.w[0] == doctest::Approx(0.6370).epsilon(2e-4));
    CHECK(w6.w[1] == doctest::Approx(0.2846).epsilon(2e-4));
    CHECK(w6.w[2] == doctest::Approx(0.0784).epsilon(2e-3));

    // a = (ln 2.5, ln 1.25) = (0.91629, 0.22314), sum 1.13943
    const RecombinationWeights w4 = default_weights(4, 2);
    CHECK(w4.w[0] == doctest::Approx(0.8042).epsilon(2e-4));
    CHECK(w4.w[1] == doctest::Approx(0.1958).epsilon(2e-4));

    // independent closed form: mu_eff = (sum a)^2 / sum a^2
    const double a0 = std::log(2.5), a1 = std::log(1.25);
    CHECK(w4.mu_eff() == doctest::Approx((a0 + a1) * (a0 + a1) / (a0 * a0 + a1 * a1)));
}

TEST_CASE("property: default weights lie in the simplex and strictly decrease") {
    for (std::size_t n = 1; n <= 100; ++n) {
        const PopulationSize ps = default_population(n);
        const RecombinationWeights w = default_weights(ps.lambda, ps.mu);
        CAPTURE(n);
        REQUIRE(w.size() == ps.mu);
        double sum = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(w.w[i] >= 0.0);
            if (i > 0) CHECK(w.w[i] < w.w[i - 1]);
            sum += w.w[i];
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        CHECK_NOTHROW(w.validate());
    }
}

TEST_CASE("weight validation") {
    RecombinationWeights bad{{0.5, 0.6}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    RecombinationWeights neg{{1.5, -0.5}};
    CHECK_THROWS_AS(neg.validate(), ConfigError);
    CHECK_THROWS_AS(default_weights(4, 5), ConfigError);
}

TEST_CASE("canonical CMA rates from the closed forms") {
    const std::size_t n = 2;
    const RecombinationWeights w = default_weights(6, 3);
    const double me = w.mu_eff();
    const CmaRates r = CmaRates::canonical(n, me);
    const double dn = static_cast<double>(n);
    CHECK(r.c_sigma == doctest::Approx((me + 2.0) / (dn + me + 5.0)));
    CHECK(r.d_sigma ==
          doctest::Approx(1.0 + 2.0 * std::max(0.0, std::sqrt((me - 1.0) / (dn + 1.0)) - 1.0) + r.c_sigma));
    CHECK(r.c_c == doctest::Approx((4.0 + me / dn) / (dn + 4.0 + 2.0 * me / dn)));
    CHECK(r.c_1 == doctest::Approx(2.0 / ((dn + 1.3) * (dn + 1.3) + me)));
    CHECK(r.c_mu ==
          doctest::Approx(std::min(1.0 - r.c_1, 2.0 * (me - 2.0 + 1.0 / me) / ((dn + 2.0) * (dn + 2.0) + me))));
}

TEST_CASE("safeguard_direction") {
    const Point d{0.6, 0.8};
    CHECK(safeguard_direction(d) == d);
    const Point big = safeguard_direction(Point{1e12, 0.0});
    CHECK(norm2(big) == doctest::Approx(1e10));
    const Point tiny = safeguard_direction(Point{0.0, 1e-12});
    CHECK(norm2(tiny) == doctest::Approx(1e-10));
    CHECK_THROWS_AS(safeguard_direction(Point{0.0, 0.0}), InputError);
}

TEST_CASE("property: safeguard keeps the direction and clamps the norm") {
    std::mt19937_64 gen(21);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ex(-14.0, 14.0);
    for (int i = 0; i < 2000; ++i) {
        Point d(4);
        const double scale = std::pow(10.0, ex(gen));
        for (double& v : d) v = nd(gen) * scale;
        const Point s = safeguard_direction(d);
        const double nd_ = norm2(d), ns = norm2(s);
        CHECK(ns >= 1e-10 * (1 - 1e-12));
        CHECK(ns <= 1e10 * (1 + 1e-12));
        double dot = 0.0;
        for (std::size_t j = 0; j < 4; ++j) dot += d[j] * s[j];
        CHECK(dot / (nd_ * ns) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sample_directions: determinism and safeguard") {
    DistributionState ds(3, 1.0);
    Rng a(42), b(42);
    const auto da = sample_directions(ds, 8, a);
    const auto db = sample_directions(ds, 8, b);
    CHECK(da == db);
    for (const Point& d : da) {
        CHECK(norm2(d) >= 1e-10);
        CHECK(norm2(d) <= 1e10);
    }
}

TEST_CASE("sample_directions: Monte-Carlo covariance matches diag(1, 4)") {
    DistributionState ds(2, 1.0);
    ds.set_covariance(std::vector<double>{1.0, 0.0, 0.0, 4.0});
    Rng rng(1);
    const auto dirs = sample_directions(ds, 100000, rng);
    double s00 = 0, s11 = 0, s01 = 0;
    for (const Point& d : dirs) {
        s00 += d[0] * d[0];
        s11 += d[1] * d[1];
        s01 += d[0] * d[1];
    }
    const double m = static_cast<double>(dirs.size());
    CHECK(s00 / m == doctest::Approx(1.0).epsilon(0.05));
    CHECK(s11 / m == doctest::Approx(4.0).epsilon(0.05));
    CHECK(std::abs(s01 / m) < 0.05 * 2.0);
}

TEST_CASE("set_covariance factorisation agrees with an independent eigensolver") {
    std::mt19937_64 gen(4);
    std::normal_distribution<double> nd;
    const std::size_t n = 5;
    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = nd(gen);
    const Eigen::MatrixXd c = a * a.transpose() + Eigen::MatrixXd::Identity(n, n);
    DistributionState ds(n, 1.0);
    ds.set_covariance(std::vector<double>(c.data(), c.data() + n * n));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    std::vector<double> got(ds.scales().begin(), ds.scales().end());
    for (double& s : got) s *= s;
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-10));

    // B diag(D) B^T B diag(D) B^T = C through transform / inverse_sqrt_times
    const Point v{1.0, -2.0, 0.5, 3.0, 0.0};
    const Point w = ds.inverse_sqrt_times(v);
    const Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(v.data(), n);
    const Eigen::VectorXd expect = es.operatorInverseSqrt() * ev;
    for (std::size_t i = 0; i < n; ++i) CHECK(w[i] == doctest::Approx(expect(i)).epsilon(1e-9));
}

TEST_CASE("eigenvalue floor repairs a singular covariance") {
    DistributionState ds(2, 1.0);
    ds.set_covariance(std::vector<double>{1.0, 1.0, 1.0, 1.0});
    for (double s : ds.scales()) CHECK(s > 0.0);
    const double floor = 1e-14 * 2.0 / 2.0;
    CHECK(*std::min_element(ds.scales().begin(), ds.scales().end()) >= std::sqrt(floor) * (1 - 1e-9));
}

TEST_CASE("project_box") {
    const Point lo{0.0, 0.0}, hi{1.0, 1.0};
    CHECK(project_box(Point{0.5}, Point{0.0}, Point{1.0}) == Point{0.5});
    CHECK(project_box(Point{-2.0, 3.0}, lo, hi) == Point{0.0, 1.0});
}

TEST_CASE("property: projection is idempotent and nonexpansive") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    const Point lo{-1.0, 0.0, -2.0}, hi{1.0, 3.0, -1.0};
    for (int i = 0; i < 3000; ++i) {
        const Point x{u(gen), u(gen), u(gen)}, y{u(gen), u(gen), u(gen)};
        const Point px = project_box(x, lo, hi), py = project_box(y, lo, hi);
        CHECK(project_box(px, lo, hi) == px);
        CHECK(dist(px, py) <= dist(x, y) + 1e-15);
    }
}

TEST_CASE("projected_direction") {
    CHECK(projected_direction(Point{0.2}, 1.0, Point{0.3}, Point{0.0}, Point{1.0}) == Point{0.3});
    CHECK(projected_direction(Point{1.0}, 1.0, Point{2.0}, Point{0.0}, Point{1.0}) == Point{0.0});
    // clamp (1.5, 0.7) to (1, 0.7), minus x: (0.5, 0.2)
    const Point d = projected_direction(Point{0.5, 0.5}, 1.0, Point{1.0, 0.2}, Point{0.0, 0.0}, Point{1.0, 1.0});
    CHECK(d[0] == doctest::Approx(0.5));
    CHECK(d[1] == doctest::Approx(0.2));
}

TEST_CASE("property: projected offspring stay in the box") {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ex(-8.0, 3.0);
    const Point lo{-1.0, 0.1, 100.0, -1e-3}, hi{1.0, 0.3, 1000.0, 1e-3};
    for (int i = 0; i < 20000; ++i) {
        Point x(4), d(4);
        for (std::size_t j = 0; j < 4; ++j) {
            x[j] = lo[j] + (hi[j] - lo[j]) * u01(gen);
            d[j] = nd(gen);
        }
        if (i % 7 == 0) x[i % 4] = hi[i % 4];
        const double sigma = std::pow(10.0, ex(gen));
        const Point dt = projected_direction(x, sigma, d, lo, hi);
        const Point y = step_point(x, sigma, dt);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(y[j] >= lo[j]);
            CHECK(y[j] <= hi[j]);
        }
    }
}

TEST_CASE("tangent_generators_box") {
    const Point lo{0.0, 0.0, 0.0}, hi{1.0, 1.0, 1.0};
    CHECK(tangent_generators_box(Point{0.5, 0.5, 0.5}, lo, hi, 1e-3).empty());

    const auto face = tangent_generators_box(Point{0.0, 0.5, 0.5}, lo, hi, 1e-3);
    // generators of {d : d_1 >= 0}: +e1, +-e2, +-e3
    CHECK(face.size() == 5);
    for (const Point& d : face) {
        CHECK(d[0] >= 0.0);
        const Point y{0.0 + 1e-6 * d[0], 0.5 + 1e-6 * d[1], 0.5 + 1e-6 * d[2]};
        for (std::size_t j = 0; j < 3; ++j) CHECK((y[j] >= lo[j] && y[j] <= hi[j]));
    }
    CHECK(std::find(face.begin(), face.end(), Point{-1.0, 0.0, 0.0}) == face.end());
    CHECK(std::find(face.begin(), face.end(), Point{1.0, 0.0, 0.0}) != face.end());

    const auto corner = tangent_generators_box(Point{0.0, 0.0, 0.0}, lo, hi, 1e-3);
    CHECK(corner.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        Point e(3, 0.0);
        e[j] = 1.0;
        CHECK(std::find(corner.begin(), corner.end(), e) != corner.end());
    }
}

TEST_CASE("generator_threshold") {
    CHECK(generator_threshold(1.0, Point{0.0, 0.0}, Point{2.0, 10.0}) == doctest::Approx(2e-3));
    CHECK(generator_threshold(1e-4, Point{0.0}, Point{2.0}) == 1e-4);
}

TEST_CASE("recombine") {
    RecombinationWeights one{{1.0}};
    CHECK(recombine(std::vector<Point>{{3.0, -1.0}}, one) == Point{3.0, -1.0});
    RecombinationWeights half{{0.5, 0.5}};
    CHECK(recombine(std::vector<Point>{{0.0, 0.0}, {2.0, 4.0}}, half) == Point{1.0, 2.0});
    const RecombinationWeights w = default_weights(6, 3);
    const Point p{0.1, 0.7};
    CHECK(recombine(std::vector<Point>{p, p, p}, w) == p);
}

TEST_CASE("property: recombination stays in the componentwise envelope") {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> nd(0.0, 100.0);
    const RecombinationWeights w = default_weights(11, 5);
    for (int i = 0; i < 2000; ++i) {
        std::vector<Point> pts(5, Point(3));
        for (Point& q : pts)
            for (double& v : q) v = nd(gen);
        const Point r = recombine(pts, w);
        for (std::size_t j = 0; j < 3; ++j) {
            double lo = pts[0][j], hi = pts[0][j];
            for (const Point& q : pts) {
                lo = std::min(lo, q[j]);
                hi = std::max(hi, q[j]);
            }
            CHECK(r[j] >= lo);
            CHECK(r[j] <= hi);
        }
    }
}

TEST_CASE("frozen rates leave the distribution unchanged") {
    DistributionState ds(2, 0.7);
    ds.set_covariance(std::vector<double>{2.0, 0.3, 0.3, 1.0});
    const RecombinationWeights w = default_weights(6, 3);
    const std::vector<Point> steps{{1.0, 0.0}, {0.5, 0.5}, {-0.2, 0.1}};
    const DistributionState next = update_distribution(ds, steps, w, CmaRates::frozen(2), 0.7);
    for (std::size_t i = 0; i < 4; ++i) CHECK(next.covariance()[i] == ds.covariance()[i]);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(next.path_sigma()[i] == ds.path_sigma()[i]);
        CHECK(next.path_cov()[i] == ds.path_cov()[i]);
    }
    CHECK(next.sigma_es() == 0.7);
}

TEST_CASE("repeated +e1 steps stretch the covariance along e1") {
    DistributionState ds(2, 1.0);
    const RecombinationWeights w = default_weights(6, 3);
    const CmaRates rates = CmaRates::canonical(2, w.mu_eff());
    const std::vector<Point> steps(3, Point{1.0, 0.0});
    double prev = ds.cov(0, 0) / ds.cov(1, 1);
    for (int k = 0; k < 10; ++k) {
        ds = update_distribution(ds, steps, w, rates, ds.sigma_es());
        const double ratio = ds.cov(0, 0) / ds.cov(1, 1);
        CHECK(ratio > prev);
        CHECK(symmetric(ds, 1e-10));
        prev = ratio;
    }
    CHECK(ds.generation() == 10);
}

TEST_CASE("property: updates keep the covariance symmetric and positive definite") {
    std::mt19937_64 gen(23);
    std::normal_distribution<double> nd;
    const std::size_t n = 6;
    const PopulationSize ps = default_population(n);
    const RecombinationWeights w = default_weights(ps.lambda, ps.mu);
    const CmaRates rates = CmaRates::canonical(n, w.mu_eff());
    DistributionState ds(n, 1.0);
    for (int k = 0; k < 200; ++k) {
        std::vector<Point> steps(ps.mu, Point(n));
        for (Point& s : steps)
            for (double& v : s) v = nd(gen) * (k % 3 == 0 ? 5.0 : 0.2);
        ds = update_distribution(ds, steps, w, rates, ds.sigma_es());
        CHECK(symmetric(ds, 1e-10));
        for (double s : ds.scales()) CHECK(s > 0.0);
        CHECK(ds.sigma_es() > 0.0);
    }
}

TEST_CASE("update determinism") {
    const RecombinationWeights w = default_weights(6, 3);
    const CmaRates rates = CmaRates::canonical(2, w.mu_eff());
    const std::vector<Point> steps{{1.0, 0.2}, {0.5, -0.5}, {-0.2, 0.1}};
    DistributionState a(2, 1.0), b(2, 1.0);
    a = update_distribution(a, steps, w, rates, 0.8);
    b = update_distribution(b, steps, w, rates, 0.8);
    for (std::size_t i = 0; i < 4; ++i) CHECK(a.covariance()[i] == b.covariance()[i]);
    CHECK(a.sigma_es() == b.sigma_es());
}
