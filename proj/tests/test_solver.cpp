#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "esmf/benchmarks.hpp"
#include "esmf/errors.hpp"
#include "esmf/kernels.hpp"
#include "esmf/solver.hpp"

using namespace esmf;

namespace {

EvaluatedPoint point(double f, double g, double delta_bar = 10.0) {
    EvaluatedPoint ep;
    ep.x = {0.0};
    ep.f_val = f;
    ep.g_val = g;
    ep.merit_val = f + delta_bar * g;
    ep.in_omega_nr = true;
    ep.f_evaluated = true;
    return ep;
}

EvaluatedPoint with_merit(double g, double merit) {
    EvaluatedPoint ep = point(0.0, g);
    ep.merit_val = merit;
    return ep;
}

// f pulls right, the constraint x <= 0 pulls left: moving left lowers g and
// raises M, which is what triggers Restoration.
ProblemSpec tug_of_war() {
    ProblemSpec p = make_problem(
        "tug", 1, [](std::span<const double> x) { return -100.0 * x[0]; },
        {[](std::span<const double> x) { return x[0]; }});
    p.lower = {-10.0};
    p.upper = {10.0};
    return p;
}

ProblemSpec box_problem(std::size_t n, double lo, double hi) {
    ProblemSpec p = bench::sphere_problem(n, lo, hi);
    return p;
}

EvaluatedPoint incumbent_of(const TraceEvent& ev) {
    EvaluatedPoint ep;
    ep.f_val = ev.f;
    ep.g_val = ev.g;
    ep.merit_val = ev.merit;
    ep.in_omega_nr = true;
    return ep;
}

EvaluatedPoint trial_of(const TraceEvent& ev) {
    EvaluatedPoint ep;
    ep.f_val = ev.trial_f;
    ep.g_val = ev.trial_g;
    ep.merit_val = ev.trial_merit;
    ep.in_omega_nr = ev.trial_in_omega_nr;
    return ep;
}

// Recomputes every event kind from the logged scalars and checks the
// step-size law, phase nesting and incumbent membership.
void replay(const ProblemSpec& p, const RunRecord& rec, const SolverConfig& cfg) {
    const double beta = cfg.contraction();
    Phase phase = Phase::Main;
    for (const TraceEvent& ev : rec.trace) {
        CAPTURE(ev.iteration);
        CHECK(ev.phase == phase);
        CHECK(in_unrelaxable(ev.x_after, p));
        const double rho = forcing(ev.sigma_before, cfg);
        const EvaluatedPoint cur = incumbent_of(ev);
        const EvaluatedPoint tr = trial_of(ev);

        EventKind expect;
        if (!ev.trial_in_omega_nr) {
            expect = EventKind::TrialOutsideOmegaNr;
        } else if (phase == Phase::Main) {
            if (is_restoration_identifier(tr, cur, ev.sigma_before, cfg)) {
                expect = EventKind::EnterRestoration;
            } else if (is_successful_point(tr, cur, ev.sigma_before, cfg)) {
                expect = EventKind::MainSuccess;
            } else {
                expect = EventKind::MainUnsuccess;
            }
        } else {
            if (tr.g_val < cur.g_val - rho && cur.g_val > cfg.big_c * rho) {
                expect = EventKind::RestorationSuccess;
            } else if (tr.merit_val < cur.merit_val) {
                expect = EventKind::LeaveRestoration;
            } else {
                expect = EventKind::RestorationUnsuccess;
            }
        }
        CHECK(ev.kind == expect);

        switch (ev.kind) {
            case EventKind::MainUnsuccess:
            case EventKind::RestorationUnsuccess:
            case EventKind::TrialOutsideOmegaNr:
                CHECK(ev.sigma_after == beta * ev.sigma_before);
                break;
            case EventKind::MainSuccess:
            case EventKind::RestorationSuccess:
                CHECK(ev.sigma_after >= ev.sigma_before);
                break;
            case EventKind::EnterRestoration:
            case EventKind::LeaveRestoration:
                CHECK(ev.sigma_after == ev.sigma_before);
                break;
        }
        if (ev.kind == EventKind::EnterRestoration) phase = Phase::Restoration;
        if (ev.kind == EventKind::LeaveRestoration) phase = Phase::Main;
    }
}

}  // namespace

TEST_CASE("forcing function") {
    SolverConfig cfg;
    CHECK(forcing(1.0, cfg) == doctest::Approx(1e-4));
    CHECK(forcing(0.1, cfg) == doctest::Approx(1e-6));
    double prev = 0.0;
    for (double s = 1e-6; s < 1e3; s *= 1.7) {
        CHECK(forcing(s, cfg) >= prev);
        prev = forcing(s, cfg);
    }
}

TEST_CASE("initial_step and default_start") {
    ProblemSpec p = box_problem(2, 0.0, 10.0);
    CHECK(initial_step(p) == 5.0);
    CHECK(initial_step(make_problem("free", 3, [](std::span<const double>) { return 0.0; })) == 1.0);
    p.upper = {2.0, 10.0};
    CHECK(initial_step(p) == 1.0);

    ProblemSpec q = box_problem(3, 0.0, 1.0);
    CHECK(default_start(q) == Point{0.5, 0.5, 0.5});
    q = box_problem(2, 0.0, 1.0);
    q.lower = {30.0, 6.0};
    q.upper = {45.0, 12.0};
    CHECK(default_start(q) == Point{37.5, 9.0});
    ProblemSpec r = box_problem(1, -1.0, 3.0);
    CHECK(default_start(r) == Point{1.0});
}

TEST_CASE("restoration identifier") {
    SolverConfig cfg;
    CHECK(is_restoration_identifier(with_merit(0.2, 5.0), with_merit(0.5, 4.0), 1.0, cfg));
    CHECK_FALSE(is_restoration_identifier(with_merit(0.2, 3.9), with_merit(0.5, 4.0), 1.0, cfg));
    CHECK_FALSE(is_restoration_identifier(with_merit(0.0, 5.0), with_merit(0.005, 4.0), 1.0, cfg));
}

TEST_CASE("successful point") {
    SolverConfig cfg;
    CHECK(is_successful_point(with_merit(0.2, 100.0), with_merit(0.5, 4.0), 1.0, cfg));
    CHECK(is_successful_point(with_merit(0.0, 3.0), with_merit(0.0, 4.0), 1.0, cfg));
    CHECK_FALSE(is_successful_point(with_merit(0.0, 4.0 - 1e-5), with_merit(0.0, 4.0), 1.0, cfg));
}

TEST_CASE("config validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate(6));
    cfg.budget = 5;
    CHECK_THROWS_AS(cfg.validate(6), ConfigError);
    cfg = SolverConfig{};
    cfg.beta1 = 0.95;
    CHECK_THROWS_AS(cfg.validate(6), ConfigError);
    cfg = SolverConfig{};
    cfg.forcing_exp = 1.0;
    CHECK_THROWS_AS(cfg.validate(6), ConfigError);
    cfg = SolverConfig{};
    cfg.limits.d_min = 2.0;
    cfg.limits.d_max = 1.0;
    CHECK_THROWS_AS(cfg.validate(6), ConfigError);
    CHECK(SolverConfig{}.contraction() == 0.9);
}

TEST_CASE("solver input errors") {
    const ProblemSpec p = bench::synthetic_problem();
    CHECK_THROWS_AS(Solver(p, SolverConfig{}, Point{7.0}), InputError);
    CHECK_THROWS_AS(Solver(p, SolverConfig{}, Point{0.0, 0.0}), InputError);
    SolverConfig tiny;
    tiny.budget = 2;
    CHECK_THROWS_AS(Solver(p, tiny, Point{0.0}), ConfigError);
    SolverConfig proj;
    proj.mode = DirectionMode::Projection;
    ProblemSpec lin = p;
    lin.linear.push_back({{1.0}, 4.0});
    CHECK_THROWS_AS(Solver(lin, proj, Point{0.0}), ConfigError);
    CHECK_THROWS_AS(solve_unrelaxable(p, SolverConfig{}, Point{0.0}), ConfigError);
}

TEST_CASE("penalty weight and step size defaults") {
    const ProblemSpec p = bench::synthetic_problem();
    Solver a(p, SolverConfig{}, Point{0.0});
    CHECK(a.merit_params().delta_bar == 10.0);
    CHECK(a.state().sigma == 5.0);
    CHECK(a.mode() == DirectionMode::Projection);
    // g(-4) = 5 < 10 keeps the floor; g at a hugely violating start raises it.
    ProblemSpec q = p;
    q.relaxable = {[](std::span<const double> x) { return 50.0 - x[0]; }};
    Solver b(q, SolverConfig{}, Point{-4.0});
    CHECK(b.merit_params().delta_bar == 54.0);
    ProblemSpec lin = p;
    lin.linear.push_back({{1.0}, 4.0});
    CHECK(Solver(lin, SolverConfig{}, Point{0.0}).mode() == DirectionMode::Barrier);
}

TEST_CASE("unsuccessful iteration: trial outside the box in barrier mode") {
    ProblemSpec p = box_problem(2, 0.0, 1.0);
    SolverConfig cfg;
    cfg.mode = DirectionMode::Barrier;
    cfg.sigma0 = 1e6;
    cfg.seed = 3;
    Solver s(p, cfg, Point{1.0, 1.0});
    const TraceEvent ev = s.step();
    CHECK(ev.kind == EventKind::TrialOutsideOmegaNr);
    CHECK(ev.sigma_after == 0.9 * 1e6);
    CHECK(ev.x_after == Point{1.0, 1.0});
    // only x0 was evaluated: offspring outside the box cost nothing
    CHECK(ev.f_evals <= 1 + default_population(2).lambda);
}

TEST_CASE("phase-specific iterations refuse the wrong phase") {
    const ProblemSpec p = bench::synthetic_problem();
    Solver s(p, SolverConfig{}, Point{0.0});
    CHECK_THROWS_AS(s.restoration_iteration(), SolverError);
}

TEST_CASE("synthetic problem reaches its closed-form optimum") {
    const ProblemSpec p = bench::synthetic_problem();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SolverConfig cfg;
        cfg.seed = seed;
        cfg.budget = 2000;
        const RunRecord rec = solve(p, cfg, Point{0.0});
        REQUIRE(rec.best_feasible);
        CHECK(rec.best_feasible->f_val == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(rec.best_feasible->x[0] == doctest::Approx(1.0).epsilon(1e-3));
        replay(p, rec, cfg);
    }
}

TEST_CASE("tug-of-war problem enters and leaves Restoration") {
    const ProblemSpec p = tug_of_war();
    std::size_t entries = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SolverConfig cfg;
        cfg.seed = seed;
        cfg.budget = 1000;
        const RunRecord rec = solve(p, cfg, Point{5.0});
        entries += rec.restoration_entries;
        replay(p, rec, cfg);
    }
    CHECK(entries > 0);
}

TEST_CASE("restoration exit switch keeps the incumbent") {
    const ProblemSpec p = tug_of_war();
    std::size_t leaves = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SolverConfig cfg;
        cfg.seed = seed;
        cfg.budget = 1000;
        cfg.restoration_exit = RestorationExit::KeepIncumbent;
        const RunRecord rec = solve(p, cfg, Point{5.0});
        Point prev{5.0};
        for (const TraceEvent& ev : rec.trace) {
            if (ev.kind == EventKind::LeaveRestoration) {
                ++leaves;
                CHECK(ev.x_after == prev);
            }
            prev = ev.x_after;
        }
        replay(p, rec, cfg);
    }
    CHECK(leaves > 0);
}

TEST_CASE("trace invariants on registry problems") {
    for (const auto& name : {"G1", "G4", "G6", "G9", "G11", "TCS", "WBD"}) {
        CAPTURE(name);
        const bench::BenchmarkEntry& e = bench::lookup(name);
        for (auto kind : {bench::StartKind::Midpoint, bench::StartKind::Infeasible}) {
            SolverConfig cfg;
            cfg.seed = 1;
            cfg.budget = 1000;
            const Point x0 = bench::start_point(name, kind);
            const RunRecord rec = solve(e.problem, cfg, x0);
            replay(e.problem, rec, cfg);

            std::size_t lambda = default_population(e.problem.dimension).lambda;
            CHECK(rec.f_evals <= cfg.budget + lambda + 1);
            if (rec.best_feasible) {
                CHECK(rec.best_feasible->g_val < cfg.feasibility_tol);
                CHECK(in_unrelaxable(rec.best_feasible->x, e.problem));
                CHECK(rec.f_evals_at_best <= rec.f_evals);
            }
            std::size_t enters = 0;
            for (const TraceEvent& ev : rec.trace) enters += ev.kind == EventKind::EnterRestoration;
            CHECK(enters == rec.restoration_entries);
            CHECK(rec.sigma_min <= rec.sigma0);
        }
    }
}

TEST_CASE("monotone merit ledger on main successes") {
    const bench::BenchmarkEntry& e = bench::lookup("G7");
    SolverConfig cfg;
    cfg.seed = 4;
    cfg.budget = 3000;
    const RunRecord rec = solve(e.problem, cfg, bench::start_point("G7", bench::StartKind::Midpoint));
    std::size_t successes = 0;
    for (const TraceEvent& ev : rec.trace) {
        if (ev.kind != EventKind::MainSuccess) continue;
        ++successes;
        const double rho = forcing(ev.sigma_before, cfg);
        const bool merit_drop = ev.trial_merit < ev.merit - rho;
        const bool g_drop = ev.trial_g < ev.g - rho && ev.g > cfg.big_c * rho;
        CHECK((merit_drop || g_drop));
    }
    CHECK(successes > 0);
}

TEST_CASE("determinism: same seed, same record") {
    const bench::BenchmarkEntry& e = bench::lookup("G9");
    SolverConfig cfg;
    cfg.seed = 77;
    const Point x0 = bench::start_point("G9", bench::StartKind::Midpoint);
    const RunRecord a = solve(e.problem, cfg, x0);
    const RunRecord b = solve(e.problem, cfg, x0);
    CHECK(a.trace == b.trace);
    CHECK(a.f_evals == b.f_evals);
    REQUIRE(a.best_feasible.has_value() == b.best_feasible.has_value());
    if (a.best_feasible) CHECK(a.best_feasible->f_val == b.best_feasible->f_val);
    cfg.seed = 78;
    CHECK_FALSE(solve(e.problem, cfg, x0).trace == a.trace);
}

TEST_CASE("bounds-only problem: merit solver equals the unrelaxable-only ES") {
    const ProblemSpec p = bench::sphere_problem(5);
    const Point x0{1.0, -2.0, 3.0, -4.0, 0.5};
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        SolverConfig cfg;
        cfg.seed = seed;
        const RunRecord a = solve(p, cfg, x0);
        const RunRecord b = solve_unrelaxable(p, cfg, x0);
        CHECK(a.trace.size() == b.trace.size());
        CHECK(a.trace == b.trace);
    }
}

TEST_CASE("generator augmentation near the bounds keeps the step-size law") {
    const bench::BenchmarkEntry& e = bench::lookup("G12");
    SolverConfig cfg;
    cfg.seed = 2;
    cfg.mode = DirectionMode::Barrier;
    cfg.generator_augmentation = true;
    const Point x0{0.0, 0.0, 0.0};
    const RunRecord rec = solve(e.problem, cfg, x0);
    replay(e.problem, rec, cfg);
}

TEST_CASE("step-size stop") {
    const ProblemSpec p = bench::sphere_problem(2);
    SolverConfig cfg;
    cfg.budget = 200000;
    cfg.sigma_stop = 1e-6;
    const RunRecord rec = solve(p, cfg, Point{1.0, 1.0});
    CHECK(rec.stop == StopReason::StepSize);
    CHECK(rec.f_evals < cfg.budget);
}

TEST_CASE("kernel backends agree on a full solve") {
    if (kernels::avx2_backend() == nullptr) return;
    const bench::BenchmarkEntry& e = bench::lookup("G8");
    SolverConfig cfg;
    cfg.seed = 0;
    const Point x0 = bench::start_point("G8", bench::StartKind::Feasible);
    REQUIRE(kernels::select_backend(kernels::BackendKind::Scalar));
    const RunRecord a = solve(e.problem, cfg, x0);
    REQUIRE(kernels::select_backend(kernels::BackendKind::Avx2));
    const RunRecord b = solve(e.problem, cfg, x0);
    REQUIRE(kernels::select_backend(kernels::BackendKind::Auto));
    REQUIRE(a.best_feasible);
    REQUIRE(b.best_feasible);
    CHECK(a.best_feasible->f_val == doctest::Approx(b.best_feasible->f_val).epsilon(1e-6));
}

TEST_CASE("classify_run") {
    auto ev = [](EventKind k) {
        TraceEvent e;
        e.kind = k;
        return e;
    };
    std::vector<TraceEvent> none(100, ev(EventKind::MainUnsuccess));
    CHECK(classify_run(none) == RestorationPattern::FiniteRestoration);

    std::vector<TraceEvent> stuck(100, ev(EventKind::RestorationUnsuccess));
    for (std::size_t i = 0; i < 10; ++i) stuck[i] = ev(EventKind::MainUnsuccess);
    stuck[10] = ev(EventKind::EnterRestoration);
    CHECK(classify_run(stuck) == RestorationPattern::NeverLeft);

    std::vector<TraceEvent> often;
    for (int k = 0; k < 25; ++k) {
        often.push_back(ev(EventKind::MainUnsuccess));
        often.push_back(ev(EventKind::MainUnsuccess));
        often.push_back(ev(EventKind::EnterRestoration));
        often.push_back(ev(EventKind::LeaveRestoration));
    }
    CHECK(classify_run(often) == RestorationPattern::InfinitelyOften);

    std::vector<TraceEvent> early = often;
    early.insert(early.end(), 400, ev(EventKind::MainSuccess));
    CHECK(classify_run(early) == RestorationPattern::FiniteRestoration);
}

TEST_CASE("trace round trip") {
    const ProblemSpec p = tug_of_war();
    SolverConfig cfg;
    cfg.budget = 300;
    cfg.mode = DirectionMode::Barrier;
    cfg.sigma0 = 50.0;
    const RunRecord rec = solve(p, cfg, Point{5.0});
    std::stringstream ss;
    write_trace(ss, rec.trace);
    const std::vector<TraceEvent> back = read_trace(ss);
    CHECK(back == rec.trace);
    bool saw_outside = false;
    for (const TraceEvent& e : back) saw_outside = saw_outside || e.kind == EventKind::TrialOutsideOmegaNr;
    CHECK(saw_outside);

    std::stringstream bad("{\"iteration\": 1}\n");
    CHECK_THROWS_AS(read_trace(bad), InputError);
}

TEST_CASE("rank_ascending breaks ties by index") {
    const std::vector<double> v{3.0, kInfinity, 1.0, kInfinity, 1.0};
    CHECK(rank_ascending(v) == std::vector<std::size_t>{2, 4, 0, 1, 3});
}

TEST_CASE("string conversions") {
    CHECK(parse_direction_mode("barrier") == DirectionMode::Barrier);
    CHECK(parse_direction_mode("projection") == DirectionMode::Projection);
    CHECK_THROWS_AS(parse_direction_mode("clip"), ConfigError);
    CHECK(parse_norm("l1") == ViolationNorm::L1);
    CHECK(parse_norm("l2sq") == ViolationNorm::L2Squared);
    CHECK_THROWS_AS(parse_norm("linf"), ConfigError);
    CHECK(to_string(EventKind::EnterRestoration) == "EnterRestoration");
}
