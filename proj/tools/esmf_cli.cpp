// esmf: experiment runner for the merit-function evolution strategy.
//
//   esmf run       seeded multi-run campaign over registry problems
//   esmf solve     one run on a registry problem or a problem file
//   esmf registry  JSON manifest of the benchmark registry
//   esmf validate  f and g at every stored optimum

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "esmf/benchmarks.hpp"
#include "esmf/errors.hpp"
#include "esmf/harness.hpp"
#include "esmf/solver.hpp"

namespace {

namespace h = esmf::harness;
namespace bench = esmf::bench;

constexpr int kExitRowsFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::uint64_t default_seed() {
    const char* env = std::getenv("ESMF_SEED");
    if (env == nullptr || *env == '\0') return 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw esmf::ConfigError("ESMF_SEED is not an unsigned integer");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << text;
    os.flush();
    if (!os) throw std::runtime_error("write to " + path + " failed");
}

struct SolverFlags {
    std::string mode;
    std::string norm;
    std::optional<std::size_t> lambda;
    std::optional<double> delta_bar;
    std::optional<double> sigma0;
    bool generators = false;

    void add_to(CLI::App& app) {
        app.add_option("--mode", mode, "Direction handling: projection or barrier");
        app.add_option("--norm", norm, "Violation norm: l1 or l2sq");
        app.add_option("--lambda", lambda, "Population size override");
        app.add_option("--delta-bar", delta_bar, "Fixed penalty weight override");
        app.add_option("--sigma0", sigma0, "Initial step size override");
        app.add_flag("--generators", generators, "Add tangent generators near active bounds");
    }

    void apply(esmf::SolverConfig& cfg) const {
        if (!mode.empty()) cfg.mode = esmf::parse_direction_mode(mode);
        if (!norm.empty()) cfg.norm = esmf::parse_norm(norm);
        cfg.lambda = lambda;
        cfg.delta_bar = delta_bar;
        cfg.sigma0 = sigma0;
        cfg.generator_augmentation = generators;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Merit-function evolution strategy for constrained black-box optimisation"};
    app.require_subcommand(1);

    std::uint64_t seed_default = 0;
    try {
        seed_default = default_seed();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    // run
    auto* run = app.add_subcommand("run", "Seeded multi-run campaign");
    std::vector<std::string> problems{"all"};
    std::size_t budget = h::kSmallBudget;
    std::size_t runs = 10;
    std::uint64_t seed = seed_default;
    std::string start = "midpoint";
    std::string output = "table";
    std::string out_path;
    std::string trace_dir;
    std::string runs_path;
    std::size_t jobs = 1;
    bool small = false;
    bool large = false;
    SolverFlags run_flags;
    run->add_option("--problems", problems, "Problem names or all")->delimiter(',');
    auto* budget_opt = run->add_option("--budget", budget, "Objective evaluations per run");
    run->add_option("--runs", runs, "Runs per problem");
    run->add_option("--seed", seed, "Base seed; run i uses seed + i (default $ESMF_SEED or 0)");
    run->add_option("--start", start, "feasible, infeasible or midpoint");
    run->add_option("--output", output, "table, csv or json");
    run->add_option("--out-path", out_path, "Write the rows here instead of stdout");
    run->add_option("--trace-dir", trace_dir, "Dump per-run traces as <problem>_run<i>.jsonl");
    run->add_option("--runs-out", runs_path, "Write per-run records as CSV");
    run->add_option("--jobs", jobs, "Worker threads");
    auto* small_flag = run->add_flag("--paper-small", small, "Budget 1000");
    auto* large_flag = run->add_flag("--paper-large", large, "Budget 20000");
    small_flag->excludes(large_flag)->excludes(budget_opt);
    large_flag->excludes(budget_opt);
    run_flags.add_to(*run);

    // solve
    auto* solve = app.add_subcommand("solve", "One run; prints a JSON summary");
    std::string problem;
    std::string config_path;
    std::size_t solve_budget = h::kSmallBudget;
    std::uint64_t solve_seed = seed_default;
    std::string solve_start = "midpoint";
    std::string trace_path;
    SolverFlags solve_flags;
    auto* problem_opt = solve->add_option("--problem", problem, "Registry problem name");
    auto* config_opt = solve->add_option("--config", config_path, "JSON problem file");
    problem_opt->excludes(config_opt);
    solve->add_option("--budget", solve_budget, "Objective evaluations");
    solve->add_option("--seed", solve_seed, "Solver seed");
    solve->add_option("--start", solve_start, "feasible, infeasible or midpoint (registry problems)");
    solve->add_option("--trace", trace_path, "Write the trace as line-delimited JSON");
    solve_flags.add_to(*solve);

    auto* registry = app.add_subcommand("registry", "Benchmark registry manifest");
    std::string registry_path;
    registry->add_option("--out-path", registry_path, "Write here instead of stdout");

    auto* validate = app.add_subcommand("validate", "Check f and g at stored optima");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (run->parsed()) {
            h::ExperimentPlan plan;
            plan.problems = problems;
            plan.budget = small ? h::kSmallBudget : large ? h::kLargeBudget : budget;
            plan.runs = runs;
            plan.base_seed = seed;
            plan.start_kind = bench::parse_start_kind(start);
            plan.output = h::parse_output_format(output);
            plan.output_path = out_path;
            plan.trace_dir = trace_dir;
            plan.jobs = jobs;
            run_flags.apply(plan.solver);

            const h::Campaign campaign = h::run_campaign(plan);
            std::string text;
            switch (plan.output) {
                case h::OutputFormat::Table: text = h::render_table(campaign.rows); break;
                case h::OutputFormat::Csv: text = h::to_csv(campaign.rows); break;
                case h::OutputFormat::Json: text = h::to_json(campaign.rows); break;
            }
            try {
                emit(text, plan.output_path);
                if (!runs_path.empty()) emit(h::runs_to_csv(campaign.runs), runs_path);
            } catch (const std::runtime_error& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return kExitIo;
            }
            int rc = 0;
            for (const h::AggregateRow& r : campaign.rows) {
                if (r.error) {
                    std::fprintf(stderr, "%s: %s\n", r.name.c_str(), r.message.c_str());
                    rc = kExitRowsFailed;
                }
            }
            return rc;
        }

        if (solve->parsed()) {
            esmf::ProblemSpec spec;
            esmf::Point x0;
            if (!config_path.empty()) {
                h::LoadedProblem lp = h::load_problem_config(read_file(config_path));
                spec = std::move(lp.problem);
                if (lp.start) {
                    x0 = *lp.start;
                } else if (spec.default_start) {
                    x0 = *spec.default_start;
                } else {
                    throw esmf::ConfigError("problem file needs a start point when a bound is infinite");
                }
            } else if (!problem.empty()) {
                spec = bench::lookup(problem).problem;
                x0 = bench::start_point(problem, bench::parse_start_kind(solve_start));
            } else {
                throw esmf::ConfigError("solve needs --problem or --config");
            }
            esmf::SolverConfig cfg;
            cfg.budget = solve_budget;
            cfg.seed = solve_seed;
            solve_flags.apply(cfg);
            const esmf::RunRecord rec = esmf::solve(spec, cfg, x0);
            if (!trace_path.empty()) {
                std::ofstream os(trace_path);
                if (!os) {
                    std::fprintf(stderr, "error: cannot write %s\n", trace_path.c_str());
                    return kExitIo;
                }
                esmf::write_trace(os, rec.trace);
            }
            std::fputs(h::run_summary_json(rec).c_str(), stdout);
            return 0;
        }

        if (registry->parsed()) {
            emit(h::registry_manifest(), registry_path);
            return 0;
        }

        if (validate->parsed()) {
            const bench::ValidationReport rep = bench::validate_registry();
            for (const bench::ValidationRow& r : rep.rows) {
                std::printf("%-5s f_opt=%-14.8g f=%-14.8g |df|=%-10.3g g=%-10.3g %s\n", r.name.c_str(), r.f_opt,
                            r.f_at_optimum, r.abs_error, r.g_at_optimum, r.ok ? "ok" : "FAIL");
            }
            for (const std::string& s : rep.skipped) std::printf("%-5s no stored optimum\n", s.c_str());
            return rep.all_ok() ? 0 : kExitRowsFailed;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return 0;
}
