#pragma once

// Merit-function evolution strategy for problems with relaxable constraints
// c_i(x) <= 0 and unrelaxable bounds/linear constraints.
//
// The solver alternates between two phases:
//   Main         offspring ranked by the merit M; a trial mean is accepted on
//                sufficient decrease of g (far from feasibility) or of M.
//   Restoration  offspring ranked by the barrier violation g; entered when a
//                trial reduces g but not M while the incumbent is far from
//                feasibility, left once a trial decreases M.
// Unsuccessful iterations contract the step size by beta; successful ones
// take max(sigma_k, sigma_k^ES).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esmf/es_engine.hpp"
#include "esmf/problem.hpp"

namespace esmf {

enum class DirectionMode { Barrier, Projection };
enum class Phase { Main, Restoration };

enum class EventKind {
    MainSuccess,
    MainUnsuccess,
    EnterRestoration,
    RestorationSuccess,
    RestorationUnsuccess,
    LeaveRestoration,
    TrialOutsideOmegaNr,
};

// Incumbent after leaving Restoration through a merit decrease.
enum class RestorationExit {
    AcceptTrial,    // x_{k+1} = x_trial
    KeepIncumbent,  // x_{k+1} = x_k
};

enum class StopReason { Budget, StepSize, IterationLimit };

enum class Provenance { Sampled, Projected, Generator };

std::string_view to_string(DirectionMode m);
std::string_view to_string(Phase p);
std::string_view to_string(EventKind k);
std::string_view to_string(StopReason r);
std::string_view to_string(ViolationNorm n);

DirectionMode parse_direction_mode(std::string_view s);
ViolationNorm parse_norm(std::string_view s);

struct SolverConfig {
    std::optional<std::size_t> lambda;  // default_population() when unset
    std::optional<std::size_t> mu;
    double beta1 = 0.9;
    double beta2 = 0.9;
    DirectionLimits limits;
    double forcing_coeff = 1e-4;
    double forcing_exp = 2.0;
    std::optional<double> delta_bar;  // default max(10, g(x0))
    double big_c = 100.0;
    ViolationNorm norm = ViolationNorm::L1;
    std::size_t budget = 1000;  // objective evaluations
    double feasibility_tol = 1e-5;
    std::optional<DirectionMode> mode;  // projection for bounds-only problems, barrier otherwise
    bool generator_augmentation = false;
    std::uint64_t seed = 0;
    std::optional<double> sigma0;
    double sigma_stop = 1e-12;
    std::size_t max_iterations = 0;  // 0: 50 * budget
    RestorationExit restoration_exit = RestorationExit::AcceptTrial;
    std::optional<CmaRates> rates;  // canonical rates when unset

    // Contraction used on unsuccessful iterations, a point of [beta1, beta2].
    double contraction() const { return 0.5 * (beta1 + beta2); }

    // Throws ConfigError on invalid constants; lambda is checked against the budget.
    void validate(std::size_t lambda) const;
};

// rho(sigma) = forcing_coeff * sigma^forcing_exp
double forcing(double sigma, const SolverConfig& cfg);

// Half the smallest finite bound range, or 1 when no coordinate has two finite bounds.
double initial_step(const ProblemSpec& p);

// (LB + UB) / 2; requires finite bounds.
Point default_start(const ProblemSpec& p);

// g_trial < g_k - rho, g_k > C rho and M_trial >= M_k.
bool is_restoration_identifier(const EvaluatedPoint& trial, const EvaluatedPoint& current, double sigma,
                               const SolverConfig& cfg);

// [g_k > C rho and g_trial < g_k - rho] or M_trial < M_k - rho.
bool is_successful_point(const EvaluatedPoint& trial, const EvaluatedPoint& current, double sigma,
                         const SolverConfig& cfg);

struct IterationState {
    EvaluatedPoint incumbent;
    double sigma = 1.0;
    DistributionState distribution{1, 1.0};
    RecombinationWeights weights;
    Phase phase = Phase::Main;
    std::optional<std::size_t> restoration_entry_iteration;
    EvalCounter counts;
    std::size_t iteration = 0;
};

struct TraceEvent {
    std::size_t iteration = 0;
    Phase phase = Phase::Main;  // phase in which the iteration ran
    EventKind kind = EventKind::MainUnsuccess;
    bool success = false;
    double sigma_before = 0.0;
    double sigma_after = 0.0;
    double f = 0.0;  // incumbent before the iteration
    double g = 0.0;
    double merit = 0.0;
    double trial_f = kInfinity;  // +inf when not evaluated
    double trial_g = kInfinity;
    double trial_merit = kInfinity;
    bool trial_in_omega_nr = false;
    std::size_t f_evals = 0;  // cumulative after the iteration
    std::size_t c_evals = 0;
    Point x_after;

    bool operator==(const TraceEvent&) const = default;
};

struct RunRecord {
    std::optional<EvaluatedPoint> best_feasible;
    std::size_t f_evals_at_best = 0;
    EvaluatedPoint final_iterate;
    std::size_t f_evals = 0;
    std::size_t c_evals = 0;
    std::size_t restoration_entries = 0;
    std::size_t iterations = 0;
    std::size_t eval_errors = 0;
    double sigma0 = 0.0;
    double sigma_min = 0.0;
    double delta_bar = 0.0;
    StopReason stop = StopReason::Budget;
    std::vector<TraceEvent> trace;
};

class Solver {
public:
    // Throws InputError if x0 is outside the unrelaxable region or has the
    // wrong dimension, ConfigError on an invalid configuration.
    Solver(const ProblemSpec& problem, SolverConfig cfg, std::span<const double> x0);

    const IterationState& state() const { return state_; }
    const SolverConfig& config() const { return cfg_; }
    const MeritParams& merit_params() const { return merit_; }
    DirectionMode mode() const { return mode_; }

    bool finished() const;
    std::optional<StopReason> stop_reason() const;

    // One iteration of whichever phase is current; appends to the trace.
    TraceEvent step();
    TraceEvent main_iteration();
    TraceEvent restoration_iteration();

    RunRecord run();
    RunRecord record() const;

private:
    void observe(const EvaluatedPoint& ep);
    EvaluatedPoint evaluate_merit(std::span<const double> x);
    TraceEvent begin_event() const;
    void finish_event(TraceEvent& ev);

    const ProblemSpec& problem_;
    SolverConfig cfg_;
    MeritParams merit_;
    DirectionMode mode_;
    PopulationSize pop_;
    CmaRates rates_;
    Rng rng_;
    IterationState state_;

    std::optional<EvaluatedPoint> best_;
    std::size_t f_evals_at_best_ = 0;
    std::size_t restoration_entries_ = 0;
    std::size_t eval_errors_ = 0;
    double sigma0_ = 0.0;
    double sigma_min_ = 0.0;
    std::vector<TraceEvent> trace_;
};

RunRecord solve(const ProblemSpec& p, const SolverConfig& cfg, std::span<const double> x0);

// The ES for problems whose only constraints are unrelaxable (r = 0):
// offspring ranked by the extreme-barrier objective, trial accepted when
// f(x_trial) <= f(x_k) - rho(sigma_k). Throws ConfigError if p has relaxable
// constraints.
RunRecord solve_unrelaxable(const ProblemSpec& p, const SolverConfig& cfg, std::span<const double> x0);

// Stable ranking of values ascending, ties by index.
std::vector<std::size_t> rank_ascending(std::span<const double> values);

enum class RestorationPattern { FiniteRestoration, NeverLeft, InfinitelyOften };

std::string_view to_string(RestorationPattern c);

struct ClassifyOptions {
    std::size_t entry_threshold = 20;
    double never_left_fraction = 0.5;
    double tail_fraction = 0.1;
};

// Finite-run proxy for the three restoration regimes. Run progress is
// measured in iterations.
RestorationPattern classify_run(std::span<const TraceEvent> trace, const ClassifyOptions& opts = {});

// Line-delimited JSON, one event per line, keys in declaration order:
// iteration, phase, kind, success, sigma_before, sigma_after, f, g, merit,
// trial_f, trial_g, trial_merit, trial_in_omega_nr, f_evals, c_evals, x.
// Infinite values are written as the strings "inf" / "-inf".
void write_trace(std::ostream& os, std::span<const TraceEvent> trace);
std::vector<TraceEvent> read_trace(std::istream& is);

}  // namespace esmf
