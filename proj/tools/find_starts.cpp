// Searches feasible and infeasible start points for the registry problems and
// prints them as StartRecord initializers for src/benchmark_starts.cpp.
//
// Feasible: uniform rejection sampling over the bound box; when that fails,
// the violation g is minimised from the midpoint with the bounds-only ES.
// Infeasible: a mildly infeasible rejection sample (g <= 10, so the penalty
// weight max(10, g(x0)) keeps its floor value); otherwise the midpoint when it
// violates; otherwise any violating sample.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "esmf/benchmarks.hpp"
#include "esmf/solver.hpp"

namespace {

using esmf::Point;

constexpr double kTol = esmf::bench::kStartTolerance;
constexpr double kMildViolation = 10.0;

std::string format_point(const Point& x) {
    std::string s = "{";
    char buf[40];
    for (std::size_t j = 0; j < x.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", x[j]);
        s += (j ? ", " : "") + std::string(buf);
    }
    return s + "}";
}

void emit(const std::string& name, bool feasible, const Point& x, const std::string& prov) {
    std::printf("        {\"%s\", %s, %s,\n         \"%s\"},\n", name.c_str(), feasible ? "true" : "false",
                format_point(x).c_str(), prov.c_str());
}

double violation(const esmf::ProblemSpec& p, const Point& x) {
    return esmf::eval_violation(x, p, esmf::ViolationNorm::L1);
}

struct Sampled {
    Point x;
    std::size_t draws = 0;
};

template <class Pred>
std::optional<Sampled> sample(const esmf::ProblemSpec& p, std::uint64_t seed, std::size_t max_draws, Pred pred) {
    std::mt19937_64 gen(seed);
    Point x(p.dimension);
    for (std::size_t k = 1; k <= max_draws; ++k) {
        for (std::size_t j = 0; j < p.dimension; ++j) {
            std::uniform_real_distribution<double> u(p.lower[j], p.upper[j]);
            x[j] = u(gen);
        }
        if (pred(x)) return Sampled{x, k};
    }
    return std::nullopt;
}

std::optional<Point> minimise_violation(const esmf::ProblemSpec& p, std::uint64_t seed, std::size_t budget) {
    esmf::ProblemSpec q;
    q.name = p.name + "-violation";
    q.dimension = p.dimension;
    q.lower = p.lower;
    q.upper = p.upper;
    q.objective = [&p](std::span<const double> x) { return violation(p, Point(x.begin(), x.end())); };
    esmf::SolverConfig cfg;
    cfg.seed = seed;
    cfg.budget = budget;
    const esmf::RunRecord rec = esmf::solve_unrelaxable(q, cfg, *p.default_start);
    if (rec.best_feasible && rec.best_feasible->f_val < kTol) return rec.best_feasible->x;
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Find stored start points for the benchmark registry"};
    std::uint64_t seed = 20240601;
    std::size_t draws = 200000;
    std::size_t budget = 200000;
    std::vector<std::string> only;
    app.add_option("--seed", seed, "Sampling seed");
    app.add_option("--draws", draws, "Maximum rejection-sampling draws");
    app.add_option("--budget", budget, "Evaluation budget for violation minimisation");
    app.add_option("--problems", only, "Restrict to these problems");
    CLI11_PARSE(app, argc, argv);

    for (const auto& e : esmf::bench::registry()) {
        const esmf::ProblemSpec& p = e.problem;
        if (!only.empty() && std::find(only.begin(), only.end(), p.name) == only.end()) continue;

        auto feas = sample(p, seed, draws, [&](const Point& x) { return violation(p, x) < kTol; });
        if (feas) {
            emit(p.name, true, feas->x,
                 "rejection sampling over the box, seed " + std::to_string(seed) + ", draw " +
                     std::to_string(feas->draws));
        } else if (auto x = minimise_violation(p, seed, budget)) {
            emit(p.name, true, *x,
                 "violation minimised from the midpoint, seed " + std::to_string(seed) + ", budget " +
                     std::to_string(budget));
        } else {
            std::fprintf(stderr, "%s: no feasible start found\n", p.name.c_str());
        }

        const Point& mid = *p.default_start;
        auto mild = sample(p, seed, draws, [&](const Point& x) {
            const double g = violation(p, x);
            return g >= kTol && g <= kMildViolation;
        });
        if (mild) {
            emit(p.name, false, mild->x,
                 "rejection sampling over the box for 1e-5 <= g <= 10, seed " + std::to_string(seed) + ", draw " +
                     std::to_string(mild->draws));
        } else if (violation(p, mid) >= kTol) {
            emit(p.name, false, mid, "box midpoint");
        } else if (auto inf = sample(p, seed, draws, [&](const Point& x) { return violation(p, x) >= kTol; })) {
            emit(p.name, false, inf->x,
                 "rejection sampling over the box, seed " + std::to_string(seed) + ", draw " +
                     std::to_string(inf->draws));
        } else {
            std::fprintf(stderr, "%s: no infeasible start found\n", p.name.c_str());
        }
    }
    return 0;
}
