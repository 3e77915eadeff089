#include "esmf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "esmf/errors.hpp"
#include "offspring.hpp"

namespace esmf {

std::string_view to_string(DirectionMode m) { return m == DirectionMode::Barrier ? "barrier" : "projection"; }

std::string_view to_string(Phase p) { return p == Phase::Main ? "main" : "restoration"; }

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::MainSuccess: return "MainSuccess";
        case EventKind::MainUnsuccess: return "MainUnsuccess";
        case EventKind::EnterRestoration: return "EnterRestoration";
        case EventKind::RestorationSuccess: return "RestorationSuccess";
        case EventKind::RestorationUnsuccess: return "RestorationUnsuccess";
        case EventKind::LeaveRestoration: return "LeaveRestoration";
        case EventKind::TrialOutsideOmegaNr: return "TrialOutsideOmegaNr";
    }
    return "?";
}

std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::Budget: return "budget";
        case StopReason::StepSize: return "step-size";
        case StopReason::IterationLimit: return "iteration-limit";
    }
    return "?";
}

std::string_view to_string(ViolationNorm n) { return n == ViolationNorm::L1 ? "l1" : "l2sq"; }

DirectionMode parse_direction_mode(std::string_view s) {
    if (s == "barrier") return DirectionMode::Barrier;
    if (s == "projection") return DirectionMode::Projection;
    throw ConfigError("unknown direction mode '" + std::string(s) + "' (expected barrier or projection)");
}

ViolationNorm parse_norm(std::string_view s) {
    if (s == "l1" || s == "L1") return ViolationNorm::L1;
    if (s == "l2sq" || s == "l2" || s == "L2Squared") return ViolationNorm::L2Squared;
    throw ConfigError("unknown violation norm '" + std::string(s) + "' (expected l1 or l2sq)");
}

void SolverConfig::validate(std::size_t lambda) const {
    if (!(beta1 > 0.0 && beta1 <= beta2 && beta2 < 1.0)) throw ConfigError("need 0 < beta1 <= beta2 < 1");
    if (!(limits.d_min > 0.0 && limits.d_min < limits.d_max)) throw ConfigError("need 0 < d_min < d_max");
    if (!(forcing_coeff > 0.0)) throw ConfigError("forcing coefficient must be positive");
    if (!(forcing_exp > 1.0)) throw ConfigError("forcing exponent must exceed 1");
    if (delta_bar && !(*delta_bar > 0.0)) throw ConfigError("penalty weight must be positive");
    if (!(big_c > 1.0)) throw ConfigError("restoration constant C must exceed 1");
    if (!(feasibility_tol > 0.0)) throw ConfigError("feasibility tolerance must be positive");
    if (sigma0 && !(*sigma0 > 0.0)) throw ConfigError("initial step size must be positive");
    if (budget < lambda) {
        throw ConfigError("budget " + std::to_string(budget) + " is smaller than lambda " + std::to_string(lambda));
    }
}

double forcing(double sigma, const SolverConfig& cfg) { return cfg.forcing_coeff * std::pow(sigma, cfg.forcing_exp); }

double initial_step(const ProblemSpec& p) {
    double smallest = kInfinity;
    for (std::size_t j = 0; j < p.dimension; ++j) {
        if (std::isfinite(p.lower[j]) && std::isfinite(p.upper[j])) {
            const double range = p.upper[j] - p.lower[j];
            if (range <= 0.0) {
                throw ConfigError("problem '" + p.name + "': coordinate " + std::to_string(j) +
                                  " is fixed by its bounds; eliminate it before solving");
            }
            smallest = std::min(smallest, range);
        }
    }
    return std::isfinite(smallest) ? 0.5 * smallest : 1.0;
}

Point default_start(const ProblemSpec& p) {
    Point x(p.dimension);
    for (std::size_t j = 0; j < p.dimension; ++j) {
        if (!std::isfinite(p.lower[j]) || !std::isfinite(p.upper[j])) {
            throw ConfigError("problem '" + p.name + "' has an infinite bound; supply a start point");
        }
        x[j] = 0.5 * (p.lower[j] + p.upper[j]);
    }
    return x;
}

bool is_restoration_identifier(const EvaluatedPoint& trial, const EvaluatedPoint& current, double sigma,
                               const SolverConfig& cfg) {
    const double rho = forcing(sigma, cfg);
    return trial.g_val < current.g_val - rho && current.g_val > cfg.big_c * rho &&
           trial.merit_val >= current.merit_val;
}

bool is_successful_point(const EvaluatedPoint& trial, const EvaluatedPoint& current, double sigma,
                         const SolverConfig& cfg) {
    const double rho = forcing(sigma, cfg);
    const bool violation_decrease = current.g_val > cfg.big_c * rho && trial.g_val < current.g_val - rho;
    const bool merit_decrease = trial.merit_val < current.merit_val - rho;
    return violation_decrease || merit_decrease;
}

std::vector<std::size_t> rank_ascending(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // NaN never reaches here (mapped to +inf), so < is a strict weak order.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return order;
}

Solver::Solver(const ProblemSpec& problem, SolverConfig cfg, std::span<const double> x0)
    : problem_(problem), cfg_(std::move(cfg)), rng_(cfg_.seed) {
    problem_.validate();
    if (x0.size() != problem_.dimension) throw InputError("start point has the wrong dimension");
    if (!in_unrelaxable(x0, problem_)) {
        throw InputError("start point lies outside the unrelaxable region of '" + problem_.name + "'");
    }

    pop_ = default_population(problem_.dimension);
    if (cfg_.lambda) pop_.lambda = *cfg_.lambda;
    if (cfg_.mu) {
        pop_.mu = *cfg_.mu;
    } else if (cfg_.lambda) {
        pop_.mu = pop_.lambda / 2;
    }
    if (pop_.lambda < 2 || pop_.mu < 1 || pop_.mu > pop_.lambda) throw ConfigError("need lambda >= 2, 1 <= mu <= lambda");
    cfg_.validate(pop_.lambda);

    mode_ = cfg_.mode.value_or(problem_.bounds_only() ? DirectionMode::Projection : DirectionMode::Barrier);
    if (mode_ == DirectionMode::Projection && !problem_.bounds_only()) {
        throw ConfigError("projection mode supports bound constraints only; use barrier mode");
    }

    // x0: f and g once each; the penalty weight depends on g(x0).
    EvaluatedPoint start;
    start.x.assign(x0.begin(), x0.end());
    start.in_omega_nr = true;
    start.f_val = problem_.objective(x0);
    start.f_evaluated = true;
    ++state_.counts.f_evals;
    start.g_val = eval_violation(x0, problem_, cfg_.norm, &state_.counts);
    if (!std::isfinite(start.f_val) || !std::isfinite(start.g_val)) {
        throw InputError("objective or constraints are not finite at the start point");
    }
    merit_.delta_bar = cfg_.delta_bar.value_or(std::max(10.0, start.g_val));
    merit_.big_c = cfg_.big_c;
    merit_.norm = cfg_.norm;
    merit_.validate();
    start.merit_val = start.f_val + merit_.delta_bar * start.g_val;

    sigma0_ = cfg_.sigma0.value_or(initial_step(problem_));
    sigma_min_ = sigma0_;

    state_.incumbent = start;
    state_.sigma = sigma0_;
    state_.distribution = DistributionState(problem_.dimension, sigma0_);
    state_.weights = default_weights(pop_.lambda, pop_.mu);
    rates_ = cfg_.rates.value_or(CmaRates::canonical(problem_.dimension, state_.weights.mu_eff()));
    if (cfg_.max_iterations == 0) cfg_.max_iterations = 50 * cfg_.budget;

    observe(state_.incumbent);
}

std::optional<StopReason> Solver::stop_reason() const {
    if (state_.counts.f_evals >= cfg_.budget) return StopReason::Budget;
    if (state_.sigma < cfg_.sigma_stop) return StopReason::StepSize;
    if (state_.iteration >= cfg_.max_iterations) return StopReason::IterationLimit;
    return std::nullopt;
}

bool Solver::finished() const { return stop_reason().has_value(); }

void Solver::observe(const EvaluatedPoint& ep) {
    if (ep.eval_error) ++eval_errors_;
    if (!ep.f_evaluated || !is_feasible(ep, cfg_.feasibility_tol) || !std::isfinite(ep.f_val)) return;
    if (!best_ || ep.f_val < best_->f_val) {
        best_ = ep;
        f_evals_at_best_ = state_.counts.f_evals;
    }
}

EvaluatedPoint Solver::evaluate_merit(std::span<const double> x) {
    EvaluatedPoint ep = merit_value(x, problem_, merit_, &state_.counts);
    observe(ep);
    return ep;
}

TraceEvent Solver::begin_event() const {
    TraceEvent ev;
    ev.iteration = state_.iteration;
    ev.phase = state_.phase;
    ev.sigma_before = state_.sigma;
    ev.f = state_.incumbent.f_val;
    ev.g = state_.incumbent.g_val;
    ev.merit = state_.incumbent.merit_val;
    return ev;
}

void Solver::finish_event(TraceEvent& ev) {
    ev.sigma_after = state_.sigma;
    ev.f_evals = state_.counts.f_evals;
    ev.c_evals = state_.counts.c_evals;
    ev.x_after = state_.incumbent.x;
    sigma_min_ = std::min(sigma_min_, state_.sigma);
    ++state_.iteration;
    trace_.push_back(ev);
}

TraceEvent Solver::step() {
    return state_.phase == Phase::Main ? main_iteration() : restoration_iteration();
}

TraceEvent Solver::main_iteration() {
    if (state_.phase != Phase::Main) throw SolverError("main iteration requested during restoration");
    TraceEvent ev = begin_event();
    const double sigma = state_.sigma;

    // Step 1
    const detail::Offspring off =
        detail::generate_offspring(state_.incumbent.x, sigma, state_.distribution, pop_.lambda, mode_,
                                   cfg_.generator_augmentation, problem_, cfg_.limits, rng_);

    // Step 2
    std::vector<double> merits(off.points.size());
    for (std::size_t i = 0; i < off.points.size(); ++i) merits[i] = evaluate_merit(off.points[i]).merit_val;
    const std::vector<std::size_t> order = rank_ascending(merits);
    const Point trial_x = detail::recombine_ranked(off, order, state_.weights);

    // Step 3
    bool unsuccessful = false;
    if (!in_unrelaxable(trial_x, problem_)) {
        ev.kind = EventKind::TrialOutsideOmegaNr;
        unsuccessful = true;
    } else {
        const EvaluatedPoint trial = evaluate_merit(trial_x);
        ev.trial_f = trial.f_val;
        ev.trial_g = trial.g_val;
        ev.trial_merit = trial.merit_val;
        ev.trial_in_omega_nr = true;
        if (is_restoration_identifier(trial, state_.incumbent, sigma, cfg_)) {
            ev.kind = EventKind::EnterRestoration;
            state_.phase = Phase::Restoration;
            state_.restoration_entry_iteration = state_.iteration;
            ++restoration_entries_;
        } else if (is_successful_point(trial, state_.incumbent, sigma, cfg_)) {
            ev.kind = EventKind::MainSuccess;
            ev.success = true;
            state_.incumbent = trial;
            state_.sigma = std::max(sigma, state_.distribution.sigma_es());
        } else {
            ev.kind = EventKind::MainUnsuccess;
            unsuccessful = true;
        }
    }
    if (unsuccessful) state_.sigma = cfg_.contraction() * sigma;

    // Step 4
    state_.distribution =
        detail::adapt_distribution(state_.distribution, off, order, state_.weights, rates_, state_.sigma);

    finish_event(ev);
    return ev;
}

TraceEvent Solver::restoration_iteration() {
    if (state_.phase != Phase::Restoration) throw SolverError("restoration iteration requested in the main phase");
    TraceEvent ev = begin_event();
    const double sigma = state_.sigma;
    const double rho = forcing(sigma, cfg_);

    // Step 1
    const detail::Offspring off =
        detail::generate_offspring(state_.incumbent.x, sigma, state_.distribution, pop_.lambda, mode_,
                                   cfg_.generator_augmentation, problem_, cfg_.limits, rng_);

    // Step 2: rank on the barrier violation; f is not evaluated at offspring.
    std::vector<double> violations(off.points.size());
    for (std::size_t i = 0; i < off.points.size(); ++i) {
        const EvaluatedPoint ep = violation_value(off.points[i], problem_, cfg_.norm, &state_.counts);
        if (ep.eval_error) ++eval_errors_;
        violations[i] = ep.g_val;
    }
    const std::vector<std::size_t> order = rank_ascending(violations);
    const Point trial_x = detail::recombine_ranked(off, order, state_.weights);

    // Step 3
    const EvaluatedPoint& current = state_.incumbent;
    if (!in_unrelaxable(trial_x, problem_)) {
        // M(x_trial) = +inf cannot trigger the exit.
        ev.kind = EventKind::TrialOutsideOmegaNr;
        state_.sigma = cfg_.contraction() * sigma;
    } else {
        const EvaluatedPoint trial = evaluate_merit(trial_x);
        ev.trial_f = trial.f_val;
        ev.trial_g = trial.g_val;
        ev.trial_merit = trial.merit_val;
        ev.trial_in_omega_nr = true;
        if (trial.g_val < current.g_val - rho && current.g_val > cfg_.big_c * rho) {
            ev.kind = EventKind::RestorationSuccess;
            ev.success = true;
            state_.incumbent = trial;
            state_.sigma = std::max(sigma, state_.distribution.sigma_es());
        } else if (trial.merit_val < current.merit_val) {
            ev.kind = EventKind::LeaveRestoration;
            state_.phase = Phase::Main;
            state_.restoration_entry_iteration.reset();
            if (cfg_.restoration_exit == RestorationExit::AcceptTrial) state_.incumbent = trial;
        } else {
            ev.kind = EventKind::RestorationUnsuccess;
            state_.sigma = cfg_.contraction() * sigma;
        }
    }

    // Step 4
    state_.distribution =
        detail::adapt_distribution(state_.distribution, off, order, state_.weights, rates_, state_.sigma);

    finish_event(ev);
    return ev;
}

RunRecord Solver::run() {
    while (!finished()) step();
    return record();
}

RunRecord Solver::record() const {
    RunRecord r;
    r.best_feasible = best_;
    r.f_evals_at_best = f_evals_at_best_;
    r.final_iterate = state_.incumbent;
    r.f_evals = state_.counts.f_evals;
    r.c_evals = state_.counts.c_evals;
    r.restoration_entries = restoration_entries_;
    r.iterations = state_.iteration;
    r.eval_errors = eval_errors_;
    r.sigma0 = sigma0_;
    r.sigma_min = sigma_min_;
    r.delta_bar = merit_.delta_bar;
    r.stop = stop_reason().value_or(StopReason::Budget);
    r.trace = trace_;
    return r;
}

RunRecord solve(const ProblemSpec& p, const SolverConfig& cfg, std::span<const double> x0) {
    Solver solver(p, cfg, x0);
    return solver.run();
}

std::string_view to_string(RestorationPattern c) {
    switch (c) {
        case RestorationPattern::FiniteRestoration: return "finite";
        case RestorationPattern::NeverLeft: return "never-left";
        case RestorationPattern::InfinitelyOften: return "infinitely-often";
    }
    return "?";
}

RestorationPattern classify_run(std::span<const TraceEvent> trace, const ClassifyOptions& opts) {
    std::size_t entries = 0;
    std::size_t last_entry = 0;
    bool open = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i].kind == EventKind::EnterRestoration) {
            ++entries;
            last_entry = i;
            open = true;
        } else if (trace[i].kind == EventKind::LeaveRestoration) {
            open = false;
        }
    }
    if (entries == 0) return RestorationPattern::FiniteRestoration;

    const auto total = static_cast<double>(trace.size());
    const double inside = total - static_cast<double>(last_entry);
    if (open && inside >= opts.never_left_fraction * total) return RestorationPattern::NeverLeft;
    if (entries >= opts.entry_threshold &&
        static_cast<double>(last_entry) >= (1.0 - opts.tail_fraction) * total) {
        return RestorationPattern::InfinitelyOften;
    }
    return RestorationPattern::FiniteRestoration;
}

}  // namespace esmf
