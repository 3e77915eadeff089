#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "esmf/errors.hpp"
#include "esmf/solver.hpp"
#include "json.hpp"

namespace esmf {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

double to_double(const ordered_json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInfinity;
        if (s == "-inf") return -kInfinity;
        if (s == "nan") return std::nan("");
        throw InputError("bad numeric field in trace: " + s);
    }
    return j.get<double>();
}

EventKind parse_kind(const std::string& s) {
    for (auto k : {EventKind::MainSuccess, EventKind::MainUnsuccess, EventKind::EnterRestoration,
                   EventKind::RestorationSuccess, EventKind::RestorationUnsuccess, EventKind::LeaveRestoration,
                   EventKind::TrialOutsideOmegaNr}) {
        if (to_string(k) == s) return k;
    }
    throw InputError("unknown trace event kind: " + s);
}

Phase parse_phase(const std::string& s) {
    if (s == to_string(Phase::Main)) return Phase::Main;
    if (s == to_string(Phase::Restoration)) return Phase::Restoration;
    throw InputError("unknown trace phase: " + s);
}

TraceEvent parse_event(const ordered_json& j) {
    TraceEvent ev;
    ev.iteration = j.at("iteration").get<std::size_t>();
    ev.phase = parse_phase(j.at("phase").get<std::string>());
    ev.kind = parse_kind(j.at("kind").get<std::string>());
    ev.success = j.at("success").get<bool>();
    ev.sigma_before = to_double(j.at("sigma_before"));
    ev.sigma_after = to_double(j.at("sigma_after"));
    ev.f = to_double(j.at("f"));
    ev.g = to_double(j.at("g"));
    ev.merit = to_double(j.at("merit"));
    ev.trial_f = to_double(j.at("trial_f"));
    ev.trial_g = to_double(j.at("trial_g"));
    ev.trial_merit = to_double(j.at("trial_merit"));
    ev.trial_in_omega_nr = j.at("trial_in_omega_nr").get<bool>();
    ev.f_evals = j.at("f_evals").get<std::size_t>();
    ev.c_evals = j.at("c_evals").get<std::size_t>();
    for (const auto& v : j.at("x")) ev.x_after.push_back(to_double(v));
    return ev;
}

}  // namespace

void write_trace(std::ostream& os, std::span<const TraceEvent> trace) {
    for (const TraceEvent& ev : trace) {
        ordered_json j;
        j["iteration"] = ev.iteration;
        j["phase"] = std::string(to_string(ev.phase));
        j["kind"] = std::string(to_string(ev.kind));
        j["success"] = ev.success;
        j["sigma_before"] = number(ev.sigma_before);
        j["sigma_after"] = number(ev.sigma_after);
        j["f"] = number(ev.f);
        j["g"] = number(ev.g);
        j["merit"] = number(ev.merit);
        j["trial_f"] = number(ev.trial_f);
        j["trial_g"] = number(ev.trial_g);
        j["trial_merit"] = number(ev.trial_merit);
        j["trial_in_omega_nr"] = ev.trial_in_omega_nr;
        j["f_evals"] = ev.f_evals;
        j["c_evals"] = ev.c_evals;
        ordered_json x = ordered_json::array();
        for (double v : ev.x_after) x.push_back(number(v));
        j["x"] = std::move(x);
        os << j.dump() << '\n';
    }
}

std::vector<TraceEvent> read_trace(std::istream& is) {
    std::vector<TraceEvent> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(parse_event(ordered_json::parse(line)));
        } catch (const ordered_json::exception& e) {
            throw InputError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace esmf
