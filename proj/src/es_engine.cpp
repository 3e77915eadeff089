#include "esmf/es_engine.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "esmf/errors.hpp"
#include "esmf/kernels.hpp"

namespace esmf {

PopulationSize default_population(std::size_t n) {
    if (n < 1) throw ConfigError("population size needs a positive dimension");
    PopulationSize p;
    p.lambda = 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(n))));
    p.mu = p.lambda / 2;
    return p;
}

double RecombinationWeights::mu_eff() const {
    double s = 0.0;
    for (double wi : w) s += wi * wi;
    return 1.0 / s;
}

void RecombinationWeights::validate() const {
    if (w.empty()) throw ConfigError("empty recombination weights");
    double s = 0.0;
    for (double wi : w) {
        if (!(wi >= 0.0)) throw ConfigError("recombination weights must be nonnegative");
        s += wi;
    }
    if (std::fabs(s - 1.0) > 1e-12) throw ConfigError("recombination weights must sum to one");
}

RecombinationWeights default_weights(std::size_t lambda, std::size_t mu) {
    if (mu < 1 || mu > lambda) throw ConfigError("weights need 1 <= mu <= lambda");
    const double base = std::log(static_cast<double>(lambda) / 2.0 + 0.5);
    RecombinationWeights rw;
    rw.w.resize(mu);
    for (std::size_t i = 0; i < mu; ++i) rw.w[i] = base - std::log(static_cast<double>(i + 1));
    if (!(rw.w.back() > 0.0)) throw ConfigError("mu too large: last recombination weight is not positive");
    const double total = std::accumulate(rw.w.begin(), rw.w.end(), 0.0);
    for (double& wi : rw.w) wi /= total;
    return rw;
}

CmaRates CmaRates::canonical(std::size_t n, double mu_eff) {
    const double nd = static_cast<double>(n);
    CmaRates r;
    r.c_sigma = (mu_eff + 2.0) / (nd + mu_eff + 5.0);
    r.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (nd + 1.0)) - 1.0) + r.c_sigma;
    r.c_c = (4.0 + mu_eff / nd) / (nd + 4.0 + 2.0 * mu_eff / nd);
    r.c_1 = 2.0 / ((nd + 1.3) * (nd + 1.3) + mu_eff);
    r.c_mu = std::min(1.0 - r.c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((nd + 2.0) * (nd + 2.0) + mu_eff));
    r.chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));
    return r;
}

CmaRates CmaRates::frozen(std::size_t n) {
    CmaRates r;
    const double nd = static_cast<double>(n);
    r.chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));
    return r;
}

DistributionState::DistributionState(std::size_t n, double sigma_es)
    : n_(n),
      cov_(n * n, 0.0),
      basis_(n * n, 0.0),
      scales_(n, 1.0),
      path_sigma_(n, 0.0),
      path_cov_(n, 0.0),
      sigma_es_(sigma_es) {
    if (n < 1) throw ConfigError("distribution needs a positive dimension");
    if (!(sigma_es > 0.0)) throw ConfigError("ES step length must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        cov_[i * n + i] = 1.0;
        basis_[i * n + i] = 1.0;
    }
}

Point DistributionState::transform(std::span<const double> z) const {
    Point scaled(n_);
    for (std::size_t i = 0; i < n_; ++i) scaled[i] = scales_[i] * z[i];
    Point out(n_);
    kernels::gemv(basis_, scaled, out);
    return out;
}

Point DistributionState::inverse_sqrt_times(std::span<const double> v) const {
    // B^T v, scaled by 1/D, then B (.)
    Point t(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        t[j] = kernels::dot(std::span<const double>(basis_).subspan(j * n_, n_), v) / scales_[j];
    }
    Point out(n_);
    kernels::gemv(basis_, t, out);
    return out;
}

void DistributionState::set_covariance(std::span<const double> c) {
    if (c.size() != n_ * n_) throw InputError("covariance has wrong size");
    for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < n_; ++i) {
            cov_[j * n_ + i] = 0.5 * (c[j * n_ + i] + c[i * n_ + j]);
        }
    }
    factorize();
}

void DistributionState::factorize() {
    using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;
    const auto n = static_cast<Eigen::Index>(n_);

    for (int attempt = 0; attempt < 2; ++attempt) {
        Eigen::Map<Matrix> cmat(cov_.data(), n, n);
        const double trace = cmat.trace();
        const bool finite = cmat.allFinite() && std::isfinite(trace) && trace > 0.0;
        const double floor = 1e-14 * trace / static_cast<double>(n_);

        if (finite) {
            Eigen::SelfAdjointEigenSolver<Matrix> solver(cmat);
            if (solver.info() == Eigen::Success && solver.eigenvalues().allFinite()) {
                Eigen::VectorXd ev = solver.eigenvalues();
                const Matrix& vecs = solver.eigenvectors();
                bool floored = false;
                for (Eigen::Index i = 0; i < n; ++i) {
                    if (ev[i] < floor) {
                        ev[i] = floor;
                        floored = true;
                    }
                }
                if (floored) {
                    Matrix rebuilt = vecs * ev.asDiagonal() * vecs.transpose();
                    cmat = 0.5 * (rebuilt + rebuilt.transpose());
                }
                for (Eigen::Index i = 0; i < n; ++i) scales_[static_cast<std::size_t>(i)] = std::sqrt(ev[i]);
                std::copy(vecs.data(), vecs.data() + n * n, basis_.begin());
                return;
            }
        }

        // Repair: replace non-finite entries and lift the diagonal, then retry.
        double diag_floor = 1e-14;
        if (std::isfinite(trace) && trace > 0.0) diag_floor = std::max(diag_floor, floor);
        for (double& v : cov_) {
            if (!std::isfinite(v)) v = 0.0;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            double& d = cov_[i * n_ + i];
            d = std::max(d, 0.0) + diag_floor;
        }
    }
    throw SolverError("covariance factorisation failed after repair");
}

DistributionState update_distribution(const DistributionState& ds, std::span<const Point> steps,
                                      const RecombinationWeights& w, const CmaRates& rates, double sigma_base) {
    const std::size_t n = ds.n_;
    if (steps.size() != w.size()) throw InputError("one weight per selected step is required");
    if (!(sigma_base > 0.0)) throw InputError("step-length base must be positive");

    DistributionState next = ds;
    ++next.generation_;
    if (steps.empty()) {
        next.sigma_es_ = sigma_base;
        return next;
    }

    const double mu_eff = w.mu_eff();

    Point y_w(n, 0.0);
    for (std::size_t i = 0; i < steps.size(); ++i) kernels::axpy(w.w[i], steps[i], y_w);

    // Cumulation for the step length.
    const Point cinv_yw = ds.inverse_sqrt_times(y_w);
    const double cs = rates.c_sigma;
    const double ps_coef = std::sqrt(cs * (2.0 - cs) * mu_eff);
    for (std::size_t i = 0; i < n; ++i) {
        next.path_sigma_[i] = (1.0 - cs) * ds.path_sigma_[i] + ps_coef * cinv_yw[i];
    }
    const double ps_norm = norm2(next.path_sigma_);

    bool h_sigma = true;
    const double decay = 1.0 - std::pow(1.0 - cs, 2.0 * static_cast<double>(ds.generation_ + 1));
    if (decay > 0.0) {
        h_sigma = ps_norm / std::sqrt(decay) < (1.4 + 2.0 / (static_cast<double>(n) + 1.0)) * rates.chi_n;
    }

    // Cumulation for the covariance.
    const double cc = rates.c_c;
    const double pc_coef = h_sigma ? std::sqrt(cc * (2.0 - cc) * mu_eff) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        next.path_cov_[i] = (1.0 - cc) * ds.path_cov_[i] + pc_coef * y_w[i];
    }

    // Rank-one and rank-mu update.
    const double c1 = rates.c_1;
    const double cmu = rates.c_mu;
    const double correction = h_sigma ? 0.0 : cc * (2.0 - cc);
    std::vector<double> c(ds.cov_.size());
    const double keep = 1.0 - c1 - cmu + c1 * correction;
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = keep * ds.cov_[k];
    if (c1 != 0.0) kernels::rank_one(c1, next.path_cov_, c);
    if (cmu != 0.0) {
        for (std::size_t i = 0; i < steps.size(); ++i) kernels::rank_one(cmu * w.w[i], steps[i], c);
    }
    next.set_covariance(c);

    next.sigma_es_ = sigma_base * std::exp((cs / rates.d_sigma) * (ps_norm / rates.chi_n - 1.0));
    if (!(next.sigma_es_ > 0.0) || !std::isfinite(next.sigma_es_)) next.sigma_es_ = sigma_base;
    return next;
}

double norm2(std::span<const double> v) { return std::sqrt(kernels::dot(v, v)); }

Point safeguard_direction(std::span<const double> d, const DirectionLimits& limits) {
    const double norm = norm2(d);
    if (!(norm > 0.0)) throw InputError("cannot safeguard a zero direction");
    Point out(d.begin(), d.end());
    if (norm < limits.d_min) {
        for (double& v : out) v *= limits.d_min / norm;
    } else if (norm > limits.d_max) {
        for (double& v : out) v *= limits.d_max / norm;
    }
    return out;
}

std::vector<Point> sample_directions(const DistributionState& ds, std::size_t lambda, Rng& rng,
                                     const DirectionLimits& limits) {
    std::vector<Point> out;
    out.reserve(lambda);
    Point z(ds.dimension());
    while (out.size() < lambda) {
        for (double& v : z) v = rng.gaussian();
        Point d = ds.transform(z);
        if (is_zero(d)) continue;
        out.push_back(safeguard_direction(d, limits));
    }
    return out;
}

Point project_box(std::span<const double> x, std::span<const double> lower, std::span<const double> upper) {
    Point out(x.size());
    kernels::clamp(x, lower, upper, out);
    return out;
}

Point step_point(std::span<const double> x, double sigma, std::span<const double> d) {
    Point y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] + sigma * d[j];
    return y;
}

Point projected_direction(std::span<const double> x, double sigma, std::span<const double> d,
                          std::span<const double> lower, std::span<const double> upper) {
    if (!(sigma > 0.0)) throw InputError("projected direction needs a positive step size");
    const Point trial = step_point(x, sigma, d);
    const Point proj = project_box(trial, lower, upper);
    if (proj == trial) return Point(d.begin(), d.end());

    Point dt(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        dt[j] = (proj[j] - x[j]) / sigma;
        // Rounding in (p - x) / sigma may push x + sigma * dt just outside.
        while (true) {
            const double y = x[j] + sigma * dt[j];
            if ((y >= lower[j] && y <= upper[j]) || dt[j] == 0.0) break;
            dt[j] = std::nextafter(dt[j], 0.0);
        }
    }
    return dt;
}

bool is_zero(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; });
}

std::vector<Point> tangent_generators_box(std::span<const double> x, std::span<const double> lower,
                                          std::span<const double> upper, double eps) {
    if (!(eps > 0.0)) throw InputError("generator threshold must be positive");
    const std::size_t n = x.size();
    bool any_active = false;
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] - lower[j] <= eps || upper[j] - x[j] <= eps) any_active = true;
    }
    std::vector<Point> gens;
    if (!any_active) return gens;
    for (std::size_t j = 0; j < n; ++j) {
        if (upper[j] - x[j] > eps) {
            Point e(n, 0.0);
            e[j] = 1.0;
            gens.push_back(std::move(e));
        }
        if (x[j] - lower[j] > eps) {
            Point e(n, 0.0);
            e[j] = -1.0;
            gens.push_back(std::move(e));
        }
    }
    return gens;
}

double generator_threshold(double sigma, std::span<const double> lower, std::span<const double> upper) {
    double eps = sigma;
    for (std::size_t j = 0; j < lower.size(); ++j) {
        const double range = upper[j] - lower[j];
        if (std::isfinite(range) && range > 0.0) eps = std::min(eps, 1e-3 * range);
    }
    return eps;
}

Point recombine(std::span<const Point> points, const RecombinationWeights& w) {
    if (points.empty() || points.size() != w.size()) throw InputError("one weight per recombined point is required");
    const std::size_t n = points.front().size();
    Point mean(n, 0.0);
    Point lo = points.front();
    Point hi = points.front();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != n) throw InputError("recombined points differ in dimension");
        kernels::axpy(w.w[i], points[i], mean);
        for (std::size_t j = 0; j < n; ++j) {
            lo[j] = std::min(lo[j], points[i][j]);
            hi[j] = std::max(hi[j], points[i][j]);
        }
    }
    Point out(n);
    kernels::clamp(mean, lo, hi, out);
    return out;
}

}  // namespace esmf
