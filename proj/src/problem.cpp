#include "esmf/problem.hpp"

#include <cmath>
#include <string>

#include "esmf/errors.hpp"
#include "esmf/kernels.hpp"

namespace esmf {

namespace {

void check_dimension(std::span<const double> x, const ProblemSpec& p) {
    if (x.size() != p.dimension) {
        throw InputError("point of dimension " + std::to_string(x.size()) + " given to problem '" + p.name +
                         "' of dimension " + std::to_string(p.dimension));
    }
}

}  // namespace

void MeritParams::validate() const {
    if (!(delta_bar > 0.0)) throw ConfigError("merit penalty weight must be positive");
    if (!(big_c > 1.0)) throw ConfigError("restoration constant C must exceed 1");
}

void ProblemSpec::validate() const {
    if (dimension < 1) throw ConfigError("problem '" + name + "': dimension must be at least 1");
    if (!objective) throw ConfigError("problem '" + name + "': missing objective");
    if (lower.size() != dimension || upper.size() != dimension) {
        throw ConfigError("problem '" + name + "': bound vectors do not match the dimension");
    }
    for (std::size_t j = 0; j < dimension; ++j) {
        if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
            throw ConfigError("problem '" + name + "': lower bound exceeds upper bound at coordinate " +
                              std::to_string(j));
        }
    }
    for (const auto& lc : linear) {
        if (lc.a.size() != dimension) {
            throw ConfigError("problem '" + name + "': linear constraint row has wrong length");
        }
    }
    for (const auto& c : relaxable) {
        if (!c) throw ConfigError("problem '" + name + "': empty constraint evaluator");
    }
    if (default_start && default_start->size() != dimension) {
        throw ConfigError("problem '" + name + "': default start has wrong dimension");
    }
}

ProblemSpec make_problem(std::string name, std::size_t dimension, Evaluator objective,
                         std::vector<Evaluator> relaxable) {
    ProblemSpec p;
    p.name = std::move(name);
    p.dimension = dimension;
    p.objective = std::move(objective);
    p.relaxable = std::move(relaxable);
    p.lower.assign(dimension, -kInfinity);
    p.upper.assign(dimension, kInfinity);
    return p;
}

bool in_unrelaxable(std::span<const double> x, const ProblemSpec& p) {
    check_dimension(x, p);
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= p.lower[j] && x[j] <= p.upper[j])) return false;
    }
    for (const auto& lc : p.linear) {
        if (!(kernels::dot(lc.a, x) <= lc.b)) return false;
    }
    return true;
}

double violation_from_values(std::span<const double> c_values, ViolationNorm norm) {
    // NaN and +inf propagate through both kernels; -inf counts as satisfied.
    return norm == ViolationNorm::L1 ? kernels::positive_sum(c_values) : kernels::positive_sq_sum(c_values);
}

double eval_violation(std::span<const double> x, const ProblemSpec& p, ViolationNorm norm, EvalCounter* counter) {
    check_dimension(x, p);
    if (p.relaxable.empty()) return 0.0;
    std::vector<double> values(p.relaxable.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = p.relaxable[i](x);
    if (counter != nullptr) ++counter->c_evals;
    return violation_from_values(values, norm);
}

ExtendedReal barrier_value(const Evaluator& h, std::span<const double> x, const ProblemSpec& p) {
    if (!in_unrelaxable(x, p)) return kInfinity;
    return h(x);
}

EvaluatedPoint merit_value(std::span<const double> x, const ProblemSpec& p, const MeritParams& mp,
                           EvalCounter* counter) {
    EvaluatedPoint ep;
    ep.x.assign(x.begin(), x.end());
    ep.in_omega_nr = in_unrelaxable(x, p);
    if (!ep.in_omega_nr) return ep;

    ep.f_val = p.objective(x);
    ep.f_evaluated = true;
    if (counter != nullptr) ++counter->f_evals;
    ep.g_val = eval_violation(x, p, mp.norm, counter);

    if (!std::isfinite(ep.f_val) || !std::isfinite(ep.g_val)) {
        ep.eval_error = true;
        ep.merit_val = kInfinity;
        if (std::isnan(ep.f_val)) ep.f_val = kInfinity;
        if (!std::isfinite(ep.g_val)) ep.g_val = kInfinity;
        return ep;
    }
    ep.merit_val = ep.f_val + mp.delta_bar * ep.g_val;
    return ep;
}

EvaluatedPoint violation_value(std::span<const double> x, const ProblemSpec& p, ViolationNorm norm,
                               EvalCounter* counter) {
    EvaluatedPoint ep;
    ep.x.assign(x.begin(), x.end());
    ep.in_omega_nr = in_unrelaxable(x, p);
    if (!ep.in_omega_nr) return ep;
    ep.g_val = eval_violation(x, p, norm, counter);
    if (!std::isfinite(ep.g_val)) {
        ep.eval_error = true;
        ep.g_val = kInfinity;
    }
    return ep;
}

std::vector<Evaluator> relax_equalities(const std::vector<Evaluator>& equalities, double tol) {
    if (!(tol > 0.0)) throw ConfigError("equality relaxation tolerance must be positive");
    std::vector<Evaluator> out;
    out.reserve(equalities.size());
    for (const auto& h : equalities) {
        out.push_back([h, tol](std::span<const double> x) { return std::fabs(h(x)) - tol; });
    }
    return out;
}

bool is_feasible(const EvaluatedPoint& ep, double tol) { return ep.in_omega_nr && ep.g_val < tol; }

}  // namespace esmf
