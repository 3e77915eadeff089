#include "esmf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "esmf/errors.hpp"
#include "json.hpp"

namespace esmf::harness {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr const char* kCsvHeader =
    "name,f_opt,f_best_mean,f_best_median,f_best_min,evals_mean,g_mean,failures,runs,budget,seed";
constexpr const char* kRunsHeader =
    "problem,run,seed,feasible,f_best,g_best,evals_at_best,evals_total,restoration_entries,error";

std::string fmt17(double v) {
    if (std::isnan(v)) return std::string(kSentinel);
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return fmt17(v);
}

double parse_real(std::string_view s) {
    if (s == kSentinel || s == "nan" || s.empty()) return kNaN;
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    const std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (end == tmp.c_str() || *end != '\0') throw InputError("bad number: " + tmp);
    return v;
}

std::uint64_t parse_uint(std::string_view s) {
    const std::string tmp(s);
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(tmp, &pos);
    } catch (const std::exception&) {
        throw InputError("bad integer: " + tmp);
    }
    if (pos != tmp.size()) throw InputError("bad integer: " + tmp);
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    for (std::string_view line : split(text, '\n')) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

bool same_real(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return s;
}

ordered_json point_json(const Point& x) {
    ordered_json a = ordered_json::array();
    for (double v : x) {
        if (std::isfinite(v)) {
            a.push_back(v);
        } else {
            a.push_back(nullptr);
        }
    }
    return a;
}

std::size_t lambda_for(const ProblemSpec& p, const SolverConfig& cfg) {
    return cfg.lambda.value_or(default_population(p.dimension).lambda);
}

}  // namespace

OutputFormat parse_output_format(std::string_view s) {
    if (s == "table") return OutputFormat::Table;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format: " + std::string(s));
}

std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Table: return "table";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    return "?";
}

std::vector<std::string> ExperimentPlan::resolved_problems() const {
    std::vector<std::string> out;
    for (const std::string& name : problems) {
        if (name == "all") {
            for (const std::string& n : bench::problem_names()) {
                if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
            }
            continue;
        }
        bench::lookup(name);
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    return out;
}

void ExperimentPlan::validate() const {
    if (problems.empty()) throw ConfigError("no problems selected");
    if (runs < 1) throw ConfigError("runs must be at least 1");
    if (jobs < 1) throw ConfigError("jobs must be at least 1");
    for (const std::string& name : resolved_problems()) {
        const std::size_t lambda = lambda_for(bench::lookup(name).problem, solver);
        if (budget < lambda) {
            throw ConfigError("budget " + std::to_string(budget) + " is below the population size " +
                              std::to_string(lambda) + " of " + name);
        }
    }
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t run_index) { return base_seed + run_index; }

bool same_run(const RunResult& a, const RunResult& b) {
    return a.problem == b.problem && a.run_index == b.run_index && a.seed == b.seed && a.feasible == b.feasible &&
           same_real(a.f_best, b.f_best) && same_real(a.g_best, b.g_best) && a.evals_at_best == b.evals_at_best &&
           a.evals_total == b.evals_total && a.restoration_entries == b.restoration_entries && a.error == b.error;
}

bool AggregateRow::has_values() const { return !error && failures < runs; }

bool same_row(const AggregateRow& a, const AggregateRow& b) {
    return a.name == b.name && same_real(a.f_opt, b.f_opt) && same_real(a.f_best_mean, b.f_best_mean) &&
           same_real(a.f_best_median, b.f_best_median) && same_real(a.f_best_min, b.f_best_min) &&
           same_real(a.evals_mean, b.evals_mean) && same_real(a.g_mean, b.g_mean) && a.failures == b.failures &&
           a.runs == b.runs && a.budget == b.budget && a.seed == b.seed;
}

AggregateRow aggregate(std::string_view name, double f_opt, const std::vector<RunResult>& runs, std::size_t budget,
                       std::uint64_t base_seed) {
    AggregateRow row;
    row.name = std::string(name);
    row.f_opt = f_opt;
    row.runs = runs.size();
    row.budget = budget;
    row.seed = base_seed;

    std::vector<double> fs;
    double evals = 0.0;
    double gs = 0.0;
    for (const RunResult& r : runs) {
        if (!r.error.empty()) {
            row.error = true;
            if (row.message.empty()) row.message = r.error;
        }
        if (!r.feasible) {
            ++row.failures;
            continue;
        }
        fs.push_back(r.f_best);
        evals += static_cast<double>(r.evals_at_best);
        gs += r.g_best;
    }
    if (row.error) row.failures = row.runs;
    if (row.error || fs.empty()) {
        row.f_best_mean = row.f_best_median = row.f_best_min = row.evals_mean = row.g_mean = kNaN;
        return row;
    }
    double sum = 0.0;
    for (double f : fs) sum += f;
    const double k = static_cast<double>(fs.size());
    row.f_best_mean = sum / k;
    row.f_best_median = median_of(fs);
    row.f_best_min = *std::min_element(fs.begin(), fs.end());
    row.evals_mean = evals / k;
    row.g_mean = gs / k;
    return row;
}

RunResult run_once(const bench::BenchmarkEntry& entry, const ExperimentPlan& plan, std::size_t run_index) {
    RunResult r;
    r.problem = entry.problem.name;
    r.run_index = run_index;
    r.seed = run_seed(plan.base_seed, run_index);
    r.f_best = kNaN;
    r.g_best = kNaN;

    SolverConfig cfg = plan.solver;
    cfg.budget = plan.budget;
    cfg.seed = r.seed;
    RunRecord rec;
    try {
        const Point x0 = bench::start_point(entry.problem.name, plan.start_kind);
        rec = solve(entry.problem, cfg, x0);
    } catch (const std::invalid_argument& e) {
        r.error = e.what();
        return r;
    } catch (const std::out_of_range& e) {
        r.error = e.what();
        return r;
    }

    r.evals_total = rec.f_evals;
    r.restoration_entries = rec.restoration_entries;
    if (rec.best_feasible) {
        r.feasible = true;
        r.f_best = rec.best_feasible->f_val;
        r.g_best = rec.best_feasible->g_val;
        r.evals_at_best = rec.f_evals_at_best;
    }

    if (!plan.trace_dir.empty()) {
        const std::filesystem::path path =
            std::filesystem::path(plan.trace_dir) / (r.problem + "_run" + std::to_string(run_index) + ".jsonl");
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot write trace file " + path.string());
        write_trace(os, rec.trace);
    }
    return r;
}

Campaign run_campaign(const ExperimentPlan& plan) {
    plan.validate();
    const std::vector<std::string> names = plan.resolved_problems();
    if (!plan.trace_dir.empty()) std::filesystem::create_directories(plan.trace_dir);

    std::vector<const bench::BenchmarkEntry*> entries;
    for (const std::string& n : names) entries.push_back(&bench::lookup(n));

    const std::size_t cells = entries.size() * plan.runs;
    std::vector<RunResult> results(cells);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t c = next.fetch_add(1);
            if (c >= cells) return;
            try {
                results[c] = run_once(*entries[c / plan.runs], plan, c % plan.runs);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(plan.jobs, cells);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    Campaign out;
    out.runs = results;
    for (std::size_t p = 0; p < entries.size(); ++p) {
        const std::vector<RunResult> slice(results.begin() + static_cast<std::ptrdiff_t>(p * plan.runs),
                                           results.begin() + static_cast<std::ptrdiff_t>((p + 1) * plan.runs));
        out.rows.push_back(aggregate(names[p], entries[p]->f_opt, slice, plan.budget, plan.base_seed));
    }
    return out;
}

std::vector<AggregateRow> run_experiment(const ExperimentPlan& plan) { return run_campaign(plan).rows; }

std::string render_table(const std::vector<AggregateRow>& rows) {
    if (rows.empty()) throw ConfigError("nothing to render");
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf, "%-6s %14s %16s %8s %10s\n", "Name", "f_opt", "f(x*)", "#f", "g(x*)");
    out += buf;
    for (const AggregateRow& r : rows) {
        std::string f = std::string(kSentinel), evals = std::string(kSentinel), g = std::string(kSentinel);
        if (r.has_values()) {
            std::snprintf(buf, sizeof buf, "%.6f", r.f_best_mean);
            f = buf;
            std::snprintf(buf, sizeof buf, "%.0f", r.evals_mean);
            evals = buf;
            std::snprintf(buf, sizeof buf, "%.3g", r.g_mean);
            g = buf;
        }
        std::snprintf(buf, sizeof buf, "%-6s %14.6g %16s %8s %10s\n", r.name.c_str(), r.f_opt, f.c_str(),
                      evals.c_str(), g.c_str());
        out += buf;
    }
    return out;
}

std::string to_csv(const std::vector<AggregateRow>& rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const AggregateRow& r : rows) {
        out += r.name + "," + fmt17(r.f_opt) + "," + fmt17(r.f_best_mean) + "," + fmt17(r.f_best_median) + "," +
               fmt17(r.f_best_min) + "," + fmt17(r.evals_mean) + "," + fmt17(r.g_mean) + "," +
               std::to_string(r.failures) + "," + std::to_string(r.runs) + "," + std::to_string(r.budget) + "," +
               std::to_string(r.seed) + "\n";
    }
    return out;
}

std::string to_json(const std::vector<AggregateRow>& rows) {
    // Written by hand so every real carries exactly 17 significant digits.
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const AggregateRow& r = rows[i];
        out += i ? ",\n " : "\n ";
        out += "{\"name\": " + ordered_json(r.name).dump() + ", \"f_opt\": " + json_number(r.f_opt) +
               ", \"f_best_mean\": " + json_number(r.f_best_mean) +
               ", \"f_best_median\": " + json_number(r.f_best_median) +
               ", \"f_best_min\": " + json_number(r.f_best_min) + ", \"evals_mean\": " + json_number(r.evals_mean) +
               ", \"g_mean\": " + json_number(r.g_mean) + ", \"failures\": " + std::to_string(r.failures) +
               ", \"runs\": " + std::to_string(r.runs) + ", \"budget\": " + std::to_string(r.budget) +
               ", \"seed\": " + std::to_string(r.seed) + "}";
    }
    out += rows.empty() ? "]\n" : "\n]\n";
    return out;
}

std::vector<AggregateRow> parse_csv(std::string_view text) {
    const std::vector<std::string_view> lines = lines_of(text);
    if (lines.empty() || lines.front() != kCsvHeader) throw InputError("missing or unexpected CSV header");
    std::vector<AggregateRow> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string_view> f = split(lines[i], ',');
        if (f.size() != 11) throw InputError("CSV row " + std::to_string(i) + " has the wrong field count");
        AggregateRow r;
        r.name = std::string(f[0]);
        r.f_opt = parse_real(f[1]);
        r.f_best_mean = parse_real(f[2]);
        r.f_best_median = parse_real(f[3]);
        r.f_best_min = parse_real(f[4]);
        r.evals_mean = parse_real(f[5]);
        r.g_mean = parse_real(f[6]);
        r.failures = parse_uint(f[7]);
        r.runs = parse_uint(f[8]);
        r.budget = parse_uint(f[9]);
        r.seed = parse_uint(f[10]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<AggregateRow> parse_json(std::string_view text) {
    const ordered_json doc = ordered_json::parse(text);
    if (!doc.is_array()) throw InputError("expected a JSON array");
    auto real = [](const ordered_json& v) { return v.is_null() ? kNaN : v.get<double>(); };
    std::vector<AggregateRow> out;
    for (const ordered_json& o : doc) {
        AggregateRow r;
        r.name = o.at("name").get<std::string>();
        r.f_opt = real(o.at("f_opt"));
        r.f_best_mean = real(o.at("f_best_mean"));
        r.f_best_median = real(o.at("f_best_median"));
        r.f_best_min = real(o.at("f_best_min"));
        r.evals_mean = real(o.at("evals_mean"));
        r.g_mean = real(o.at("g_mean"));
        r.failures = o.at("failures").get<std::size_t>();
        r.runs = o.at("runs").get<std::size_t>();
        r.budget = o.at("budget").get<std::size_t>();
        r.seed = o.at("seed").get<std::uint64_t>();
        out.push_back(std::move(r));
    }
    return out;
}

void write_structured(const std::vector<AggregateRow>& rows, OutputFormat format, const std::string& path) {
    std::string text;
    switch (format) {
        case OutputFormat::Table: text = render_table(rows); break;
        case OutputFormat::Csv: text = to_csv(rows); break;
        case OutputFormat::Json: text = to_json(rows); break;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << text;
    os.flush();
    if (!os) throw std::runtime_error("write to " + path + " failed");
}

std::string runs_to_csv(const std::vector<RunResult>& runs) {
    std::string out = std::string(kRunsHeader) + "\n";
    for (const RunResult& r : runs) {
        out += r.problem + "," + std::to_string(r.run_index) + "," + std::to_string(r.seed) + "," +
               (r.feasible ? "1" : "0") + "," + fmt17(r.f_best) + "," + fmt17(r.g_best) + "," +
               std::to_string(r.evals_at_best) + "," + std::to_string(r.evals_total) + "," +
               std::to_string(r.restoration_entries) + "," + sanitize(r.error) + "\n";
    }
    return out;
}

std::vector<RunResult> parse_runs_csv(std::string_view text) {
    const std::vector<std::string_view> lines = lines_of(text);
    if (lines.empty() || lines.front() != kRunsHeader) throw InputError("missing or unexpected run CSV header");
    std::vector<RunResult> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string_view> f = split(lines[i], ',');
        if (f.size() != 10) throw InputError("run CSV row " + std::to_string(i) + " has the wrong field count");
        RunResult r;
        r.problem = std::string(f[0]);
        r.run_index = parse_uint(f[1]);
        r.seed = parse_uint(f[2]);
        r.feasible = f[3] == "1";
        r.f_best = parse_real(f[4]);
        r.g_best = parse_real(f[5]);
        r.evals_at_best = parse_uint(f[6]);
        r.evals_total = parse_uint(f[7]);
        r.restoration_entries = parse_uint(f[8]);
        r.error = std::string(f[9]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<AggregateRow> aggregate_runs(const std::vector<RunResult>& runs, std::size_t budget,
                                         std::uint64_t base_seed) {
    std::vector<std::string> order;
    for (const RunResult& r : runs) {
        if (std::find(order.begin(), order.end(), r.problem) == order.end()) order.push_back(r.problem);
    }
    std::vector<AggregateRow> out;
    for (const std::string& name : order) {
        std::vector<RunResult> slice;
        for (const RunResult& r : runs) {
            if (r.problem == name) slice.push_back(r);
        }
        std::sort(slice.begin(), slice.end(),
                  [](const RunResult& a, const RunResult& b) { return a.run_index < b.run_index; });
        out.push_back(aggregate(name, bench::best_known(name), slice, budget, base_seed));
    }
    return out;
}

std::string registry_manifest() {
    ordered_json doc = ordered_json::array();
    for (const bench::BenchmarkEntry& e : bench::registry()) {
        const ProblemSpec& p = e.problem;
        ordered_json o;
        o["name"] = p.name;
        o["n"] = p.dimension;
        o["m"] = p.constraint_count();
        o["lower"] = point_json(p.lower);
        o["upper"] = point_json(p.upper);
        o["f_opt"] = e.f_opt;
        o["equality_indices"] = e.equality_indices;
        o["midpoint"] = point_json(*p.default_start);
        auto start = [](const std::optional<bench::StoredStart>& s) -> ordered_json {
            if (!s) return nullptr;
            ordered_json j;
            j["x"] = point_json(s->x);
            j["provenance"] = s->provenance;
            return j;
        };
        o["feasible_start"] = start(e.feasible_start);
        o["infeasible_start"] = start(e.infeasible_start);
        if (e.known_optimum) {
            o["known_optimum"] = point_json(*e.known_optimum);
            o["optimum_source"] = e.optimum_source;
        } else {
            o["known_optimum"] = nullptr;
        }
        doc.push_back(std::move(o));
    }
    return doc.dump(2) + "\n";
}

std::string run_summary_json(const RunRecord& rec) {
    auto real = [](double v) -> ordered_json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    ordered_json o;
    if (rec.best_feasible) {
        ordered_json b;
        b["x"] = point_json(rec.best_feasible->x);
        b["f"] = real(rec.best_feasible->f_val);
        b["g"] = real(rec.best_feasible->g_val);
        o["best_feasible"] = std::move(b);
    } else {
        o["best_feasible"] = nullptr;
    }
    o["f_evals_at_best"] = rec.f_evals_at_best;
    ordered_json fin;
    fin["x"] = point_json(rec.final_iterate.x);
    fin["f"] = real(rec.final_iterate.f_val);
    fin["g"] = real(rec.final_iterate.g_val);
    fin["merit"] = real(rec.final_iterate.merit_val);
    o["final_iterate"] = std::move(fin);
    o["f_evals"] = rec.f_evals;
    o["c_evals"] = rec.c_evals;
    o["iterations"] = rec.iterations;
    o["restoration_entries"] = rec.restoration_entries;
    o["eval_errors"] = rec.eval_errors;
    o["sigma0"] = real(rec.sigma0);
    o["sigma_min"] = real(rec.sigma_min);
    o["delta_bar"] = real(rec.delta_bar);
    o["stop"] = std::string(to_string(rec.stop));
    return o.dump() + "\n";
}

}  // namespace esmf::harness
