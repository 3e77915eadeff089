#pragma once

// Seeded multi-run campaigns over the benchmark registry, per-problem
// aggregation and the table / CSV / JSON writers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esmf/benchmarks.hpp"
#include "esmf/solver.hpp"

namespace esmf::harness {

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_output_format(std::string_view s);
std::string_view to_string(OutputFormat f);

inline constexpr std::size_t kSmallBudget = 1000;
inline constexpr std::size_t kLargeBudget = 20000;

// Failure sentinel in rendered tables and structured output.
inline constexpr std::string_view kSentinel = "-";

struct ExperimentPlan {
    std::vector<std::string> problems{"all"};
    std::size_t budget = kSmallBudget;
    std::size_t runs = 10;
    std::uint64_t base_seed = 0;
    bench::StartKind start_kind = bench::StartKind::Midpoint;
    SolverConfig solver;  // budget and seed are overwritten per run
    OutputFormat output = OutputFormat::Table;
    std::string output_path;  // empty: stdout
    std::string trace_dir;    // empty: no traces
    std::size_t jobs = 1;

    // Expands "all" and checks every name; throws LookupError.
    std::vector<std::string> resolved_problems() const;

    // Throws ConfigError unless runs >= 1, problems is nonempty and budget >= lambda
    // for every selected problem.
    void validate() const;
};

// Pure seed derivation; the problem name does not enter the seed.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index);

struct RunResult {
    std::string problem;
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    bool feasible = false;  // a feasible point was found
    double f_best = 0.0;    // NaN when !feasible
    double g_best = 0.0;
    std::size_t evals_at_best = 0;
    std::size_t evals_total = 0;
    std::size_t restoration_entries = 0;
    std::string error;  // nonempty when the solver rejected its input
};

// Field-wise equality with NaN == NaN.
bool same_run(const RunResult& a, const RunResult& b);

struct AggregateRow {
    std::string name;
    double f_opt = 0.0;
    // Means, median and min are over runs that found a feasible point; NaN
    // when there are none (rendered as the sentinel).
    double f_best_mean = 0.0;
    double f_best_median = 0.0;
    double f_best_min = 0.0;
    double evals_mean = 0.0;
    double g_mean = 0.0;
    std::size_t failures = 0;
    std::size_t runs = 0;
    std::size_t budget = 0;
    std::uint64_t seed = 0;
    bool error = false;  // not serialized; failures == runs for such rows
    std::string message;

    bool has_values() const;
};

// Field-wise equality with NaN == NaN; error and message are ignored.
bool same_row(const AggregateRow& a, const AggregateRow& b);

AggregateRow aggregate(std::string_view name, double f_opt, const std::vector<RunResult>& runs, std::size_t budget,
                       std::uint64_t base_seed);

struct Campaign {
    std::vector<AggregateRow> rows;
    std::vector<RunResult> runs;  // ordered by (problem, run index)
};

RunResult run_once(const bench::BenchmarkEntry& entry, const ExperimentPlan& plan, std::size_t run_index);

Campaign run_campaign(const ExperimentPlan& plan);
std::vector<AggregateRow> run_experiment(const ExperimentPlan& plan);

// Throws ConfigError on empty input.
std::string render_table(const std::vector<AggregateRow>& rows);

std::string to_csv(const std::vector<AggregateRow>& rows);
std::string to_json(const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> parse_csv(std::string_view text);
std::vector<AggregateRow> parse_json(std::string_view text);

// Table, CSV or JSON to path. Throws std::runtime_error on I/O failure.
void write_structured(const std::vector<AggregateRow>& rows, OutputFormat format, const std::string& path);

std::string runs_to_csv(const std::vector<RunResult>& runs);
std::vector<RunResult> parse_runs_csv(std::string_view text);

// Rebuilds aggregate rows from per-run records, in first-appearance order.
std::vector<AggregateRow> aggregate_runs(const std::vector<RunResult>& runs, std::size_t budget,
                                         std::uint64_t base_seed);

// name, n, m, bounds, f_opt, equality positions and stored starts.
std::string registry_manifest();

// One JSON object summarising a run.
std::string run_summary_json(const RunRecord& rec);

struct LoadedProblem {
    ProblemSpec problem;
    std::optional<Point> start;
};

// Declarative problem file (JSON):
//   {"name": "...", "objective": "G6" | "sphere", "constraints": "G6" | "none",
//    "dimension": 2, "lower": [...], "upper": [...], "start": [...],
//    "linear": [{"a": [...], "b": 0.0}]}
// "constraints" defaults to the objective's set; bounds default to the
// referenced problem's. Throws ConfigError / LookupError.
LoadedProblem load_problem_config(std::string_view json_text);

}  // namespace esmf::harness
