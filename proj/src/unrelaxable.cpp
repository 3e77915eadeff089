// The ES with only unrelaxable constraints: rank on f_barrier, accept on
// sufficient decrease of f. Kept separate from Solver so the two can be
// compared trace for trace.

#include <algorithm>
#include <cmath>

#include "esmf/errors.hpp"
#include "esmf/solver.hpp"
#include "offspring.hpp"

namespace esmf {

RunRecord solve_unrelaxable(const ProblemSpec& p, const SolverConfig& cfg_in, std::span<const double> x0) {
    p.validate();
    if (!p.relaxable.empty()) throw ConfigError("problem '" + p.name + "' has relaxable constraints");
    if (x0.size() != p.dimension) throw InputError("start point has the wrong dimension");
    if (!in_unrelaxable(x0, p)) throw InputError("start point lies outside the unrelaxable region");

    SolverConfig cfg = cfg_in;
    PopulationSize pop = default_population(p.dimension);
    if (cfg.lambda) pop.lambda = *cfg.lambda;
    if (cfg.mu) {
        pop.mu = *cfg.mu;
    } else if (cfg.lambda) {
        pop.mu = pop.lambda / 2;
    }
    cfg.validate(pop.lambda);
    if (cfg.max_iterations == 0) cfg.max_iterations = 50 * cfg.budget;
    const DirectionMode mode = cfg.mode.value_or(p.bounds_only() ? DirectionMode::Projection : DirectionMode::Barrier);

    const RecombinationWeights weights = default_weights(pop.lambda, pop.mu);
    const CmaRates rates = cfg.rates.value_or(CmaRates::canonical(p.dimension, weights.mu_eff()));
    Rng rng(cfg.seed);

    std::size_t f_evals = 0;
    auto f_barrier = [&](std::span<const double> y) {
        if (!in_unrelaxable(y, p)) return kInfinity;
        ++f_evals;
        const double v = p.objective(y);
        return std::isnan(v) ? kInfinity : v;
    };

    Point x(x0.begin(), x0.end());
    double fx = f_barrier(x);
    if (!std::isfinite(fx)) throw InputError("objective is not finite at the start point");

    const double sigma0 = cfg.sigma0.value_or(initial_step(p));
    double sigma = sigma0;
    DistributionState dist(p.dimension, sigma0);

    RunRecord rec;
    rec.sigma0 = sigma0;
    rec.sigma_min = sigma0;
    rec.delta_bar = cfg.delta_bar.value_or(10.0);

    auto consider = [&](std::span<const double> y, double fy) {
        if (!std::isfinite(fy)) return;
        if (!rec.best_feasible || fy < rec.best_feasible->f_val) {
            EvaluatedPoint ep;
            ep.x.assign(y.begin(), y.end());
            ep.f_val = fy;
            ep.g_val = 0.0;
            ep.merit_val = fy;
            ep.in_omega_nr = true;
            ep.f_evaluated = true;
            rec.best_feasible = ep;
            rec.f_evals_at_best = f_evals;
        }
    };
    consider(x, fx);

    std::size_t k = 0;
    while (f_evals < cfg.budget && sigma >= cfg.sigma_stop && k < cfg.max_iterations) {
        TraceEvent ev;
        ev.iteration = k;
        ev.sigma_before = sigma;
        ev.f = fx;
        ev.g = 0.0;
        ev.merit = fx;

        const detail::Offspring off = detail::generate_offspring(x, sigma, dist, pop.lambda, mode,
                                                                 cfg.generator_augmentation, p, cfg.limits, rng);
        std::vector<double> values(off.points.size());
        for (std::size_t i = 0; i < off.points.size(); ++i) {
            values[i] = f_barrier(off.points[i]);
            consider(off.points[i], values[i]);
        }
        const std::vector<std::size_t> order = rank_ascending(values);
        const Point trial = detail::recombine_ranked(off, order, weights);

        const double rho = forcing(sigma, cfg);
        const bool inside = in_unrelaxable(trial, p);
        const double ft = f_barrier(trial);
        if (inside) {
            consider(trial, ft);
            ev.trial_f = ft;
            ev.trial_g = 0.0;
            ev.trial_merit = ft;
            ev.trial_in_omega_nr = true;
        }

        if (ft <= fx - rho) {
            ev.kind = EventKind::MainSuccess;
            ev.success = true;
            x = trial;
            fx = ft;
            sigma = std::max(sigma, dist.sigma_es());
        } else {
            ev.kind = inside ? EventKind::MainUnsuccess : EventKind::TrialOutsideOmegaNr;
            sigma = cfg.contraction() * sigma;
        }

        dist = detail::adapt_distribution(dist, off, order, weights, rates, sigma);

        ev.sigma_after = sigma;
        ev.f_evals = f_evals;
        ev.c_evals = 0;
        ev.x_after = x;
        rec.sigma_min = std::min(rec.sigma_min, sigma);
        rec.trace.push_back(std::move(ev));
        ++k;
    }

    rec.final_iterate.x = x;
    rec.final_iterate.f_val = fx;
    rec.final_iterate.g_val = 0.0;
    rec.final_iterate.merit_val = fx;
    rec.final_iterate.in_omega_nr = true;
    rec.final_iterate.f_evaluated = true;
    rec.f_evals = f_evals;
    rec.iterations = k;
    if (f_evals >= cfg.budget) {
        rec.stop = StopReason::Budget;
    } else if (sigma < cfg.sigma_stop) {
        rec.stop = StopReason::StepSize;
    } else {
        rec.stop = StopReason::IterationLimit;
    }
    return rec;
}

}  // namespace esmf
