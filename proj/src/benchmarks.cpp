#include "esmf/benchmarks.hpp"

#include <algorithm>
#include <cmath>

#include "benchmark_problems.hpp"
#include "benchmark_starts.hpp"
#include "esmf/errors.hpp"

namespace esmf::bench {

StartKind parse_start_kind(std::string_view s) {
    if (s == "feasible") return StartKind::Feasible;
    if (s == "infeasible") return StartKind::Infeasible;
    if (s == "midpoint") return StartKind::Midpoint;
    throw ConfigError("unknown start kind: " + std::string(s));
}

std::string_view to_string(StartKind k) {
    switch (k) {
        case StartKind::Feasible: return "feasible";
        case StartKind::Infeasible: return "infeasible";
        case StartKind::Midpoint: return "midpoint";
    }
    return "?";
}

namespace {

double start_violation(const ProblemSpec& p, const Point& x) {
    return eval_violation(x, p, ViolationNorm::L1);
}

void check_start(const ProblemSpec& p, const StoredStart& s, bool feasible) {
    if (s.x.size() != p.dimension) throw ConfigError(p.name + ": stored start has the wrong dimension");
    if (!in_unrelaxable(s.x, p)) throw ConfigError(p.name + ": stored start lies outside the bounds");
    const double g = start_violation(p, s.x);
    if (feasible && !(g < kStartTolerance)) throw ConfigError(p.name + ": stored feasible start is infeasible");
    if (!feasible && !(g >= kStartTolerance)) throw ConfigError(p.name + ": stored infeasible start is feasible");
}

BenchmarkEntry build(detail::Definition&& d) {
    BenchmarkEntry e;
    ProblemSpec& p = e.problem;
    p.name = d.name;
    p.dimension = d.lower.size();
    p.objective = std::move(d.objective);
    p.lower = std::move(d.lower);
    p.upper = std::move(d.upper);
    p.relaxable = std::move(d.inequalities);
    const std::vector<Evaluator> relaxed = relax_equalities(d.equalities, kEqualityTolerance);
    for (const Evaluator& h : relaxed) {
        e.equality_indices.push_back(p.relaxable.size());
        p.relaxable.push_back(h);
    }
    p.best_known = d.f_opt;
    p.validate();

    Point mid(p.dimension);
    for (std::size_t j = 0; j < p.dimension; ++j) mid[j] = 0.5 * (p.lower[j] + p.upper[j]);
    p.default_start = mid;

    e.f_opt = d.f_opt;
    e.known_optimum = std::move(d.optimum);
    e.optimum_source = std::move(d.optimum_source);

    for (const detail::StartRecord& s : detail::stored_starts()) {
        if (s.name != p.name) continue;
        StoredStart st{s.x, s.provenance};
        check_start(p, st, s.feasible);
        (s.feasible ? e.feasible_start : e.infeasible_start) = std::move(st);
    }
    return e;
}

std::vector<BenchmarkEntry> build_all() {
    std::vector<BenchmarkEntry> out;
    for (detail::Definition& d : detail::definitions()) out.push_back(build(std::move(d)));
    return out;
}

}  // namespace

const std::vector<BenchmarkEntry>& registry() {
    static const std::vector<BenchmarkEntry> entries = build_all();
    return entries;
}

const BenchmarkEntry& lookup(std::string_view name) {
    for (const BenchmarkEntry& e : registry()) {
        if (e.problem.name == name) return e;
    }
    throw LookupError("unknown problem: " + std::string(name));
}

std::vector<std::string> problem_names() {
    std::vector<std::string> out;
    for (const BenchmarkEntry& e : registry()) out.push_back(e.problem.name);
    return out;
}

double best_known(std::string_view name) { return lookup(name).f_opt; }

Point start_point(std::string_view name, StartKind kind) {
    const BenchmarkEntry& e = lookup(name);
    switch (kind) {
        case StartKind::Midpoint: return *e.problem.default_start;
        case StartKind::Feasible:
            if (!e.feasible_start)
                throw LookupError("no stored feasible start for " + std::string(name) + "; use the midpoint start");
            return e.feasible_start->x;
        case StartKind::Infeasible:
            if (!e.infeasible_start)
                throw LookupError("no stored infeasible start for " + std::string(name) + "; use the midpoint start");
            return e.infeasible_start->x;
    }
    return *e.problem.default_start;
}

bool ValidationReport::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const ValidationRow& r) { return r.ok; });
}

ValidationReport validate_registry() {
    ValidationReport rep;
    for (const BenchmarkEntry& e : registry()) {
        if (!e.known_optimum) {
            rep.skipped.push_back(e.problem.name);
            continue;
        }
        const Point& x = *e.known_optimum;
        ValidationRow row;
        row.name = e.problem.name;
        row.f_opt = e.f_opt;
        row.in_bounds = in_unrelaxable(x, e.problem);
        row.f_at_optimum = e.problem.objective(x);
        row.g_at_optimum = start_violation(e.problem, x);
        row.abs_error = std::fabs(row.f_at_optimum - e.f_opt);
        row.ok = row.in_bounds && row.abs_error <= 1e-3 * std::max(1.0, std::fabs(e.f_opt)) &&
                 row.g_at_optimum <= 1e-4;
        rep.rows.push_back(row);
    }
    return rep;
}

ProblemSpec synthetic_problem() {
    ProblemSpec p = make_problem("SYN", 1, [](std::span<const double> x) { return x[0] * x[0]; },
                                 {[](std::span<const double> x) { return 1.0 - x[0]; }});
    p.lower = {-5.0};
    p.upper = {5.0};
    p.default_start = Point{0.0};
    p.best_known = 1.0;
    return p;
}

ProblemSpec sphere_problem(std::size_t n, double lo, double hi) {
    ProblemSpec p = make_problem("SPHERE", n, [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return s;
    });
    p.lower.assign(n, lo);
    p.upper.assign(n, hi);
    p.default_start = Point(n, 0.5 * (lo + hi));
    p.best_known = 0.0;
    return p;
}

}  // namespace esmf::bench
