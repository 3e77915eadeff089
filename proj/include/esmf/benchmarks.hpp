#pragma once

// Constrained test set: G1-G13 and three engineering design problems
// (pressure vessel, tension/compression spring, welded beam). Maximisation
// problems are negated; equality constraints are stored in relaxed form
// |h(x)| - 1e-4 <= 0. Bounds are the unrelaxable region, every other
// constraint is relaxable.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esmf/problem.hpp"

namespace esmf::bench {

inline constexpr double kEqualityTolerance = 1e-4;
inline constexpr double kStartTolerance = 1e-5;

enum class StartKind { Feasible, Infeasible, Midpoint };

StartKind parse_start_kind(std::string_view s);
std::string_view to_string(StartKind k);

struct StoredStart {
    Point x;
    std::string provenance;
};

struct BenchmarkEntry {
    ProblemSpec problem;
    double f_opt = 0.0;
    std::optional<StoredStart> feasible_start;
    std::optional<StoredStart> infeasible_start;
    std::vector<std::size_t> equality_indices;  // positions in problem.relaxable
    std::optional<Point> known_optimum;
    std::string optimum_source;
};

// All 16 entries in table order. Built once; stored starts are checked on
// construction and a bad one aborts with ConfigError.
const std::vector<BenchmarkEntry>& registry();

// Throws LookupError for unknown names.
const BenchmarkEntry& lookup(std::string_view name);

std::vector<std::string> problem_names();

double best_known(std::string_view name);

// Midpoint of the bounds, or a stored start. Throws LookupError when the
// requested stored start does not exist.
Point start_point(std::string_view name, StartKind kind);

struct ValidationRow {
    std::string name;
    double f_opt = 0.0;
    double f_at_optimum = 0.0;
    double abs_error = 0.0;
    double g_at_optimum = 0.0;
    bool in_bounds = false;
    bool ok = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;  // entries with a stored optimum only
    std::vector<std::string> skipped;  // entries without one
    bool all_ok() const;
};

// f and g (L1) at each stored optimum; a row fails when
// |f - f_opt| > 1e-3 max(1, |f_opt|) or g > 1e-4.
ValidationReport validate_registry();

// min x^2 subject to 1 - x <= 0 on [-5, 5]; optimum x = 1, f = 1.
ProblemSpec synthetic_problem();

// sum x_j^2 on [lo, hi]^n with no relaxable constraints.
ProblemSpec sphere_problem(std::size_t n, double lo = -5.0, double hi = 5.0);

}  // namespace esmf::bench
