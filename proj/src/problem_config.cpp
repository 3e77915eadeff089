#include <cmath>
#include <limits>

#include "esmf/errors.hpp"
#include "esmf/harness.hpp"
#include "json.hpp"

namespace esmf::harness {

namespace {

using nlohmann::json;

double bound_value(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError("bounds must be numbers or \"inf\" / \"-inf\"");
}

Point real_vector(const json& v, std::string_view what, bool allow_inf) {
    if (!v.is_array()) throw ConfigError(std::string(what) + " must be an array");
    Point out;
    for (const json& e : v) {
        const double d = allow_inf ? bound_value(e) : (e.is_number() ? e.get<double>() : NAN);
        if (std::isnan(d)) throw ConfigError(std::string(what) + " must hold finite numbers");
        out.push_back(d);
    }
    return out;
}

}  // namespace

LoadedProblem load_problem_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("problem file must hold a JSON object");
    if (!doc.contains("objective") || !doc["objective"].is_string()) {
        throw ConfigError("problem file needs an \"objective\" string");
    }

    const std::string objective = doc["objective"].get<std::string>();
    const bench::BenchmarkEntry* base = nullptr;
    std::optional<std::size_t> dim;
    if (doc.contains("dimension")) {
        if (!doc["dimension"].is_number_unsigned()) throw ConfigError("dimension must be a positive integer");
        dim = doc["dimension"].get<std::size_t>();
    }

    ProblemSpec p;
    if (objective == "sphere") {
        if (!dim) {
            if (!doc.contains("lower")) throw ConfigError("sphere needs a dimension or explicit bounds");
            dim = doc["lower"].size();
        }
        p = bench::sphere_problem(*dim);
    } else {
        base = &bench::lookup(objective);
        p = base->problem;
        if (dim && *dim != p.dimension) {
            throw ConfigError(objective + " has dimension " + std::to_string(p.dimension));
        }
    }

    if (doc.contains("constraints")) {
        const std::string cons = doc["constraints"].get<std::string>();
        if (cons == "none") {
            p.relaxable.clear();
        } else {
            const bench::BenchmarkEntry& c = bench::lookup(cons);
            if (c.problem.dimension != p.dimension) {
                throw ConfigError("constraints of " + cons + " need dimension " +
                                  std::to_string(c.problem.dimension));
            }
            p.relaxable = c.problem.relaxable;
        }
    }

    if (doc.contains("lower")) p.lower = real_vector(doc["lower"], "lower", true);
    if (doc.contains("upper")) p.upper = real_vector(doc["upper"], "upper", true);

    if (doc.contains("linear")) {
        if (!doc["linear"].is_array()) throw ConfigError("linear must be an array");
        for (const json& row : doc["linear"]) {
            if (!row.is_object() || !row.contains("a") || !row.contains("b") || !row["b"].is_number()) {
                throw ConfigError("linear entries need \"a\" and \"b\"");
            }
            LinearConstraint lc;
            lc.a = real_vector(row["a"], "linear a", false);
            lc.b = row["b"].get<double>();
            if (lc.a.size() != p.dimension) throw ConfigError("linear a has the wrong length");
            p.linear.push_back(std::move(lc));
        }
    }

    if (doc.contains("name")) {
        p.name = doc["name"].get<std::string>();
    } else if (base == nullptr) {
        p.name = "SPHERE";
    }

    p.validate();
    bool finite = true;
    for (std::size_t j = 0; j < p.dimension; ++j) {
        finite = finite && std::isfinite(p.lower[j]) && std::isfinite(p.upper[j]);
    }
    p.default_start.reset();
    if (finite) p.default_start = default_start(p);

    LoadedProblem out;
    if (doc.contains("start")) {
        out.start = real_vector(doc["start"], "start", false);
        if (out.start->size() != p.dimension) throw ConfigError("start has the wrong length");
    }
    if (base == nullptr || doc.contains("lower") || doc.contains("upper") || doc.contains("constraints") ||
        doc.contains("linear")) {
        p.best_known.reset();
    }
    out.problem = std::move(p);
    return out;
}

}  // namespace esmf::harness
