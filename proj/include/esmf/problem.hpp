#pragma once

// Problem description and the scalar quantities the solvers rank on:
// constraint violation g, the extreme barrier and the merit function
//
//     M(x) = f(x) + delta_bar * g(x)   if x is in the unrelaxable region,
//            +inf                      otherwise.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace esmf {

using Point = std::vector<double>;
using Evaluator = std::function<double(std::span<const double>)>;

// Real values extended with +inf; +inf marks points outside the unrelaxable
// region and failed evaluations. Ties are broken by generation index.
using ExtendedReal = double;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class ViolationNorm { L1, L2Squared };

struct MeritParams {
    double delta_bar = 10.0;
    double big_c = 100.0;
    ViolationNorm norm = ViolationNorm::L1;

    // Throws ConfigError unless delta_bar > 0 and big_c > 1.
    void validate() const;
};

// a . x <= b
struct LinearConstraint {
    Point a;
    double b = 0.0;
};

struct ProblemSpec {
    std::string name;
    std::size_t dimension = 0;
    Evaluator objective;
    std::vector<Evaluator> relaxable;
    Point lower;  // -inf allowed
    Point upper;  // +inf allowed
    std::vector<LinearConstraint> linear;
    std::optional<Point> default_start;
    std::optional<double> best_known;

    std::size_t constraint_count() const { return relaxable.size(); }
    bool bounds_only() const { return linear.empty(); }

    // Throws ConfigError on dimension < 1, size mismatches or LB_j > UB_j.
    void validate() const;
};

// Unbounded box of the given dimension.
ProblemSpec make_problem(std::string name, std::size_t dimension, Evaluator objective,
                         std::vector<Evaluator> relaxable = {});

struct EvalCounter {
    std::size_t f_evals = 0;
    std::size_t c_evals = 0;  // points at which the constraint vector was evaluated
};

struct EvaluatedPoint {
    Point x;
    ExtendedReal f_val = kInfinity;
    double g_val = kInfinity;
    ExtendedReal merit_val = kInfinity;
    bool in_omega_nr = false;
    bool f_evaluated = false;
    bool eval_error = false;  // non-finite f or c_i at a point of the unrelaxable region
};

// Exact (zero slack) membership in bounds and linear constraints.
bool in_unrelaxable(std::span<const double> x, const ProblemSpec& p);

double violation_from_values(std::span<const double> c_values, ViolationNorm norm);

// Evaluates every relaxable constraint once. A non-finite constraint value
// yields a non-finite result; callers treat it as an evaluation error.
double eval_violation(std::span<const double> x, const ProblemSpec& p, ViolationNorm norm,
                      EvalCounter* counter = nullptr);

// h(x) inside the unrelaxable region, +inf outside (h is not called then).
ExtendedReal barrier_value(const Evaluator& h, std::span<const double> x, const ProblemSpec& p);

// f and g are evaluated once each when x is in the unrelaxable region.
// Non-finite results give merit +inf with eval_error set.
EvaluatedPoint merit_value(std::span<const double> x, const ProblemSpec& p, const MeritParams& mp,
                           EvalCounter* counter = nullptr);

// Barrier form of g only; the objective is not evaluated. merit_val stays +inf.
EvaluatedPoint violation_value(std::span<const double> x, const ProblemSpec& p, ViolationNorm norm,
                               EvalCounter* counter = nullptr);

// Each equality c(x) = 0 becomes |c(x)| - tol <= 0.
std::vector<Evaluator> relax_equalities(const std::vector<Evaluator>& equalities, double tol = 1e-4);

// Strict: g == tol is infeasible.
bool is_feasible(const EvaluatedPoint& ep, double tol);

}  // namespace esmf
