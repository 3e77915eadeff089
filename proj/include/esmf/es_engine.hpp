#pragma once

// Sampling machinery of the (mu/mu_W, lambda)-ES: population sizing,
// recombination weights, CMA-style distribution adaptation, direction
// safeguards and bound handling (projection or tangent-cone generators).

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "esmf/problem.hpp"

namespace esmf {

struct PopulationSize {
    std::size_t lambda = 0;
    std::size_t mu = 0;
};

// lambda = 4 + floor(3 ln n), mu = floor(lambda / 2).
PopulationSize default_population(std::size_t n);

struct RecombinationWeights {
    std::vector<double> w;

    std::size_t size() const { return w.size(); }
    // 1 / sum w_i^2
    double mu_eff() const;
    // Throws ConfigError unless the weights lie in the simplex (1e-12 on the sum).
    void validate() const;
};

// w_i proportional to ln(lambda/2 + 1/2) - ln(i), i = 1..mu.
RecombinationWeights default_weights(std::size_t lambda, std::size_t mu);

struct DirectionLimits {
    double d_min = 1e-10;
    double d_max = 1e10;
};

// Seeded source of standard normal draws. One instance per solver.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double gaussian() { return normal_(engine_); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// Learning rates of the covariance and step-length adaptation.
struct CmaRates {
    double c_sigma = 0.0;
    double d_sigma = 1.0;
    double c_c = 0.0;
    double c_1 = 0.0;
    double c_mu = 0.0;
    double chi_n = 1.0;  // E||N(0, I_n)||

    static CmaRates canonical(std::size_t n, double mu_eff);
    // All rates zero: the distribution never changes.
    static CmaRates frozen(std::size_t n);
};

// Sampling distribution N(0, C) with C = B diag(D^2) B^T, plus the two
// evolution paths and the ES step length.
class DistributionState {
public:
    DistributionState(std::size_t n, double sigma_es);

    std::size_t dimension() const { return n_; }

    // Column-major n x n matrices.
    std::span<const double> covariance() const { return cov_; }
    std::span<const double> basis() const { return basis_; }
    // Square roots of the eigenvalues of C.
    std::span<const double> scales() const { return scales_; }

    std::span<const double> path_sigma() const { return path_sigma_; }
    std::span<const double> path_cov() const { return path_cov_; }
    double sigma_es() const { return sigma_es_; }
    std::uint64_t generation() const { return generation_; }

    double cov(std::size_t i, std::size_t j) const { return cov_[j * n_ + i]; }

    // B diag(D) z
    Point transform(std::span<const double> z) const;
    // C^{-1/2} v = B diag(1/D) B^T v
    Point inverse_sqrt_times(std::span<const double> v) const;

    // Replaces C (symmetrised) and recomputes the factorisation. Eigenvalues
    // below 1e-14 * trace(C) / n are raised to that floor. Throws SolverError
    // if the decomposition fails twice.
    void set_covariance(std::span<const double> c);

    friend DistributionState update_distribution(const DistributionState& ds, std::span<const Point> steps,
                                                 const RecombinationWeights& w, const CmaRates& rates,
                                                 double sigma_base);

private:
    void factorize();

    std::size_t n_;
    std::vector<double> cov_;
    std::vector<double> basis_;
    std::vector<double> scales_;
    std::vector<double> path_sigma_;
    std::vector<double> path_cov_;
    double sigma_es_;
    std::uint64_t generation_ = 0;
};

// One CMA generation from the selected steps (y_i - x_k) / sigma_k given in
// rank order with their weights. The new ES step length is
// sigma_base * exp((c_sigma / d_sigma) (||p_sigma|| / chi_n - 1)).
DistributionState update_distribution(const DistributionState& ds, std::span<const Point> steps,
                                      const RecombinationWeights& w, const CmaRates& rates, double sigma_base);

double norm2(std::span<const double> v);

// Clamps the norm into [d_min, d_max], keeping the direction. Throws
// InputError for the zero vector.
Point safeguard_direction(std::span<const double> d, const DirectionLimits& limits = {});

// lambda draws from N(0, C), each safeguarded. Zero draws are redrawn.
std::vector<Point> sample_directions(const DistributionState& ds, std::size_t lambda, Rng& rng,
                                     const DirectionLimits& limits = {});

Point project_box(std::span<const double> x, std::span<const double> lower, std::span<const double> upper);

// x + sigma * d, coordinate by coordinate. All offspring are formed here.
Point step_point(std::span<const double> x, double sigma, std::span<const double> d);

// (Phi(x + sigma d) - x) / sigma with Phi the box projection. The result is
// adjusted in the last ulp where needed so that step_point(x, sigma, result)
// lies in the box; d is returned unchanged when x + sigma d is already inside.
Point projected_direction(std::span<const double> x, double sigma, std::span<const double> d,
                          std::span<const double> lower, std::span<const double> upper);

bool is_zero(std::span<const double> v);

// Positive generators of the tangent cone of the eps-active bounds at x:
// +e_j unless the upper bound j is eps-active, -e_j unless the lower bound j
// is eps-active. Empty when no bound is eps-active.
std::vector<Point> tangent_generators_box(std::span<const double> x, std::span<const double> lower,
                                          std::span<const double> upper, double eps);

// min(sigma, 1e-3 * min_j (UB_j - LB_j)) over coordinates with finite bounds.
double generator_threshold(double sigma, std::span<const double> lower, std::span<const double> upper);

// sum_i w_i y_i, clipped to the componentwise envelope of the inputs.
Point recombine(std::span<const Point> points, const RecombinationWeights& w);

}  // namespace esmf
