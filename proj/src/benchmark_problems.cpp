// Objective and constraint formulas of the test set. Indices are zero-based:
// x[0] is x_1 of the usual statements.

#include "benchmark_problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace esmf::bench::detail {

namespace {

using X = std::span<const double>;

double sq(double v) { return v * v; }
double cube(double v) { return v * v * v; }

Definition g1() {
    Definition d;
    d.name = "G1";
    d.lower.assign(13, 0.0);
    d.upper = {1, 1, 1, 1, 1, 1, 1, 1, 1, 100, 100, 100, 1};
    d.objective = [](X x) {
        double s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (int i = 0; i < 4; ++i) {
            s1 += x[i];
            s2 += x[i] * x[i];
        }
        for (int i = 4; i < 13; ++i) s3 += x[i];
        return 5.0 * s1 - 5.0 * s2 - s3;
    };
    d.inequalities = {
        [](X x) { return 2 * x[0] + 2 * x[1] + x[9] + x[10] - 10; },
        [](X x) { return 2 * x[0] + 2 * x[2] + x[9] + x[11] - 10; },
        [](X x) { return 2 * x[1] + 2 * x[2] + x[10] + x[11] - 10; },
        [](X x) { return -8 * x[0] + x[9]; },
        [](X x) { return -8 * x[1] + x[10]; },
        [](X x) { return -8 * x[2] + x[11]; },
        [](X x) { return -2 * x[3] - x[4] + x[9]; },
        [](X x) { return -2 * x[5] - x[6] + x[10]; },
        [](X x) { return -2 * x[7] - x[8] + x[11]; },
    };
    d.f_opt = -15.0;
    d.optimum = Point{1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3, 3, 1};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g2() {
    constexpr std::size_t n = 20;
    Definition d;
    d.name = "G2";
    d.lower.assign(n, 0.0);
    d.upper.assign(n, 10.0);
    // Maximisation problem, negated.
    d.objective = [](X x) {
        double s4 = 0.0, p2 = 1.0, si = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double c = std::cos(x[i]);
            s4 += c * c * c * c;
            p2 *= c * c;
            si += static_cast<double>(i + 1) * x[i] * x[i];
        }
        return -std::fabs(s4 - 2.0 * p2) / std::sqrt(si);
    };
    d.inequalities = {
        [](X x) {
            double p = 1.0;
            for (double v : x) p *= v;
            return 0.75 - p;
        },
        [](X x) {
            double s = 0.0;
            for (double v : x) s += v;
            return s - 7.5 * static_cast<double>(x.size());
        },
    };
    d.f_opt = -0.803619;
    d.optimum = Point{3.16246061572185, 3.12833142812967, 3.09479212988791, 3.06145059523469,
                      3.02792915885555, 2.99382606701730, 2.95866871765285, 2.92184227312450,
                      0.49482511456933, 0.48835711005490, 0.48231642711865, 0.47664475092742,
                      0.47129550835493, 0.46623099264167, 0.46142004984199, 0.45683664767217,
                      0.45245876903267, 0.44826762241853, 0.44424700958760, 0.44038285956317};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g3() {
    constexpr std::size_t n = 20;
    Definition d;
    d.name = "G3";
    d.lower.assign(n, 0.0);
    d.upper.assign(n, 1.0);
    // Maximisation problem, negated.
    d.objective = [](X x) {
        const double nd = static_cast<double>(x.size());
        double p = std::pow(std::sqrt(nd), nd);
        for (double v : x) p *= v;
        return -p;
    };
    d.equalities = {
        [](X x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s - 1.0;
        },
    };
    d.f_opt = -1.0;
    d.optimum = Point(n, 1.0 / std::sqrt(static_cast<double>(n)));
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g4() {
    Definition d;
    d.name = "G4";
    d.lower = {78, 33, 27, 27, 27};
    d.upper = {102, 45, 45, 45, 45};
    d.objective = [](X x) {
        return 5.3578547 * x[2] * x[2] + 0.8356891 * x[0] * x[4] + 37.293239 * x[0] - 40792.141;
    };
    auto u = [](X x) { return 85.334407 + 0.0056858 * x[1] * x[4] + 0.0006262 * x[0] * x[3] - 0.0022053 * x[2] * x[4]; };
    auto v = [](X x) { return 80.51249 + 0.0071317 * x[1] * x[4] + 0.0029955 * x[0] * x[1] + 0.0021813 * x[2] * x[2]; };
    auto w = [](X x) { return 9.300961 + 0.0047026 * x[2] * x[4] + 0.0012547 * x[0] * x[2] + 0.0019085 * x[2] * x[3]; };
    d.inequalities = {
        [u](X x) { return u(x) - 92.0; },
        [u](X x) { return -u(x); },
        [v](X x) { return v(x) - 110.0; },
        [v](X x) { return 90.0 - v(x); },
        [w](X x) { return w(x) - 25.0; },
        [w](X x) { return 20.0 - w(x); },
    };
    d.f_opt = -30665.5;
    d.optimum = Point{78, 33, 29.9952560256815985, 45, 36.7758129057882073};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g5() {
    Definition d;
    d.name = "G5";
    d.lower = {0, 0, -0.55, -0.55};
    d.upper = {1200, 1200, 0.55, 0.55};
    d.objective = [](X x) {
        return 3.0 * x[0] + 0.000001 * cube(x[0]) + 2.0 * x[1] + (0.000002 / 3.0) * cube(x[1]);
    };
    d.inequalities = {
        [](X x) { return -x[3] + x[2] - 0.55; },
        [](X x) { return -x[2] + x[3] - 0.55; },
    };
    d.equalities = {
        [](X x) { return 1000 * std::sin(-x[2] - 0.25) + 1000 * std::sin(-x[3] - 0.25) + 894.8 - x[0]; },
        [](X x) { return 1000 * std::sin(x[2] - 0.25) + 1000 * std::sin(x[2] - x[3] - 0.25) + 894.8 - x[1]; },
        [](X x) { return 1000 * std::sin(x[3] - 0.25) + 1000 * std::sin(x[3] - x[2] - 0.25) + 1294.8; },
    };
    d.f_opt = 5126.5;
    d.optimum = Point{679.945148297028709, 1026.06697600004691, 0.118876369094410433, -0.396233485215178266};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g6() {
    Definition d;
    d.name = "G6";
    d.lower = {13, 0};
    d.upper = {100, 100};
    d.objective = [](X x) { return cube(x[0] - 10.0) + cube(x[1] - 20.0); };
    d.inequalities = {
        [](X x) { return -sq(x[0] - 5.0) - sq(x[1] - 5.0) + 100.0; },
        [](X x) { return sq(x[0] - 6.0) + sq(x[1] - 5.0) - 82.81; },
    };
    d.f_opt = -6961.81;
    d.optimum = Point{14.09500000000000064, 0.8429607892154795668};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g7() {
    Definition d;
    d.name = "G7";
    d.lower.assign(10, -10.0);
    d.upper.assign(10, 10.0);
    d.objective = [](X x) {
        return x[0] * x[0] + x[1] * x[1] + x[0] * x[1] - 14 * x[0] - 16 * x[1] + sq(x[2] - 10) + 4 * sq(x[3] - 5) +
               sq(x[4] - 3) + 2 * sq(x[5] - 1) + 5 * x[6] * x[6] + 7 * sq(x[7] - 11) + 2 * sq(x[8] - 10) +
               sq(x[9] - 7) + 45;
    };
    d.inequalities = {
        [](X x) { return -105 + 4 * x[0] + 5 * x[1] - 3 * x[6] + 9 * x[7]; },
        [](X x) { return 10 * x[0] - 8 * x[1] - 17 * x[6] + 2 * x[7]; },
        [](X x) { return -8 * x[0] + 2 * x[1] + 5 * x[8] - 2 * x[9] - 12; },
        [](X x) { return 3 * sq(x[0] - 2) + 4 * sq(x[1] - 3) + 2 * x[2] * x[2] - 7 * x[3] - 120; },
        [](X x) { return 5 * x[0] * x[0] + 8 * x[1] + sq(x[2] - 6) - 2 * x[3] - 40; },
        [](X x) { return x[0] * x[0] + 2 * sq(x[1] - 2) - 2 * x[0] * x[1] + 14 * x[4] - 6 * x[5]; },
        [](X x) { return 0.5 * sq(x[0] - 8) + 2 * sq(x[1] - 4) + 3 * x[4] * x[4] - x[5] - 30; },
        [](X x) { return -3 * x[0] + 6 * x[1] + 12 * sq(x[8] - 8) - 7 * x[9]; },
    };
    d.f_opt = 24.3062;
    d.optimum = Point{2.17199634142692, 2.3636830416034,  8.77392573913157, 5.09598443745173, 0.990654756560493,
                      1.43057392853463, 1.32164415364306, 9.82872576524495, 8.2800915887356,  8.3759266477347};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g8() {
    Definition d;
    d.name = "G8";
    d.lower = {0, 0};
    d.upper = {10, 10};
    // Maximisation problem, negated.
    d.objective = [](X x) {
        const double pi = std::numbers::pi;
        return -cube(std::sin(2 * pi * x[0])) * std::sin(2 * pi * x[1]) / (cube(x[0]) * (x[0] + x[1]));
    };
    d.inequalities = {
        [](X x) { return x[0] * x[0] - x[1] + 1; },
        [](X x) { return 1 - x[0] + sq(x[1] - 4); },
    };
    d.f_opt = -0.095825;
    d.optimum = Point{1.22797135260752599, 4.24537336612274885};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g9() {
    Definition d;
    d.name = "G9";
    d.lower.assign(7, -10.0);
    d.upper.assign(7, 10.0);
    d.objective = [](X x) {
        return sq(x[0] - 10) + 5 * sq(x[1] - 12) + std::pow(x[2], 4) + 3 * sq(x[3] - 11) + 10 * std::pow(x[4], 6) +
               7 * x[5] * x[5] + std::pow(x[6], 4) - 4 * x[5] * x[6] - 10 * x[5] - 8 * x[6];
    };
    d.inequalities = {
        [](X x) { return -127 + 2 * x[0] * x[0] + 3 * std::pow(x[1], 4) + x[2] + 4 * x[3] * x[3] + 5 * x[4]; },
        [](X x) { return -282 + 7 * x[0] + 3 * x[1] + 10 * x[2] * x[2] + x[3] - x[4]; },
        [](X x) { return -196 + 23 * x[0] + x[1] * x[1] + 6 * x[5] * x[5] - 8 * x[6]; },
        [](X x) { return 4 * x[0] * x[0] + x[1] * x[1] - 3 * x[0] * x[1] + 2 * x[2] * x[2] + 5 * x[5] - 11 * x[6]; },
    };
    d.f_opt = 680.63;
    d.optimum = Point{2.33049935147405174, 1.95137236847114592, -0.477541399510615805, 4.36572624923625874,
                      -0.624486959100388983, 1.03813099410962173, 1.5942266780671519};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g10() {
    Definition d;
    d.name = "G10";
    d.lower = {100, 1000, 1000, 10, 10, 10, 10, 10};
    d.upper = {10000, 10000, 10000, 1000, 1000, 1000, 1000, 1000};
    d.objective = [](X x) { return x[0] + x[1] + x[2]; };
    d.inequalities = {
        [](X x) { return -1 + 0.0025 * (x[3] + x[5]); },
        [](X x) { return -1 + 0.0025 * (x[4] + x[6] - x[3]); },
        [](X x) { return -1 + 0.01 * (x[7] - x[4]); },
        [](X x) { return -x[0] * x[5] + 833.33252 * x[3] + 100 * x[0] - 83333.333; },
        [](X x) { return -x[1] * x[6] + 1250 * x[4] + x[1] * x[3] - 1250 * x[3]; },
        [](X x) { return -x[2] * x[7] + 1250000 + x[2] * x[4] - 2500 * x[4]; },
    };
    d.f_opt = 7049.33;
    // Literature vector polished by a local solve with 1e-6 constraint slack;
    // the rounded published digits leave g near 4e-4.
    d.optimum = Point{579.3097494714839, 1359.9760290305933, 5109.974807301944, 182.01778445561072,
                      295.60121610691453, 217.98181554438924, 286.41616834869615, 395.6011161069145};
    d.optimum_source = "G-suite literature optimum, locally refined";
    return d;
}

Definition g11() {
    Definition d;
    d.name = "G11";
    d.lower = {-1, -1};
    d.upper = {1, 1};
    d.objective = [](X x) { return x[0] * x[0] + sq(x[1] - 1); };
    d.equalities = {
        [](X x) { return x[1] - x[0] * x[0]; },
    };
    d.f_opt = 0.75;
    d.optimum = Point{1.0 / std::numbers::sqrt2, 0.5};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g12() {
    Definition d;
    d.name = "G12";
    d.lower.assign(3, 0.0);
    d.upper.assign(3, 10.0);
    // Maximisation problem, negated.
    d.objective = [](X x) { return -(100 - sq(x[0] - 5) - sq(x[1] - 5) - sq(x[2] - 5)) / 100; };
    // Feasible set: union of 9^3 balls of radius 0.25 centred on the integer grid 1..9.
    d.inequalities = {
        [](X x) {
            double best = std::numeric_limits<double>::infinity();
            for (int p = 1; p <= 9; ++p) {
                const double a = sq(x[0] - p);
                for (int q = 1; q <= 9; ++q) {
                    const double b = a + sq(x[1] - q);
                    for (int r = 1; r <= 9; ++r) best = std::min(best, b + sq(x[2] - r));
                }
            }
            return best - 0.0625;
        },
    };
    d.f_opt = -1.0;
    d.optimum = Point{5, 5, 5};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

Definition g13() {
    Definition d;
    d.name = "G13";
    d.lower = {-2.3, -2.3, -3.2, -3.2, -3.2};
    d.upper = {2.3, 2.3, 3.2, 3.2, 3.2};
    d.objective = [](X x) { return std::exp(x[0] * x[1] * x[2] * x[3] * x[4]); };
    d.equalities = {
        [](X x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s - 10.0;
        },
        [](X x) { return x[1] * x[2] - 5 * x[3] * x[4]; },
        [](X x) { return cube(x[0]) + cube(x[1]) + 1.0; },
    };
    d.f_opt = 0.0539498;
    d.optimum = Point{-1.71714224003, 1.59572124049468, 1.8272502406271, -0.763659881912867, -0.76365986736498};
    d.optimum_source = "G-suite literature optimum";
    return d;
}

// Pressure vessel: x = (shell thickness, head thickness, inner radius, length).
// Thickness bounds are the continuous range of the usual 0.0625 multiples.
Definition pvd() {
    Definition d;
    d.name = "PVD";
    d.lower = {0.0625, 0.0625, 10, 10};
    d.upper = {6.1875, 6.1875, 200, 200};
    d.objective = [](X x) {
        return 0.6224 * x[0] * x[2] * x[3] + 1.7781 * x[1] * x[2] * x[2] + 3.1661 * x[0] * x[0] * x[3] +
               19.84 * x[0] * x[0] * x[2];
    };
    d.inequalities = {
        [](X x) { return -x[0] + 0.0193 * x[2]; },
        [](X x) { return -x[1] + 0.00954 * x[2]; },
        [](X x) {
            const double pi = std::numbers::pi;
            return -pi * x[2] * x[2] * x[3] - (4.0 / 3.0) * pi * cube(x[2]) + 1296000.0;
        },
    };
    d.f_opt = 5868.76;
    return d;
}

// Tension/compression spring: x = (wire diameter, coil diameter, active coils).
Definition tcs() {
    Definition d;
    d.name = "TCS";
    d.lower = {0.05, 0.25, 2.0};
    d.upper = {2.0, 1.3, 15.0};
    d.objective = [](X x) { return (x[2] + 2.0) * x[1] * x[0] * x[0]; };
    d.inequalities = {
        [](X x) { return 1.0 - cube(x[1]) * x[2] / (71785.0 * std::pow(x[0], 4)); },
        [](X x) {
            return (4 * x[1] * x[1] - x[0] * x[1]) / (12566.0 * (x[1] * cube(x[0]) - std::pow(x[0], 4))) +
                   1.0 / (5108.0 * x[0] * x[0]) - 1.0;
        },
        [](X x) { return 1.0 - 140.45 * x[0] / (x[1] * x[1] * x[2]); },
        [](X x) { return (x[0] + x[1]) / 1.5 - 1.0; },
    };
    d.f_opt = 0.0126653;
    d.optimum = Point{0.051689, 0.356718, 11.288966};
    d.optimum_source = "engineering design literature optimum";
    return d;
}

// Welded beam: x = (weld thickness h, weld length l, bar height t, bar thickness b).
// The lower bound h >= 0.125 carries the usual 0.125 - h <= 0 constraint.
Definition wbd() {
    Definition d;
    d.name = "WBD";
    d.lower = {0.125, 0.1, 0.1, 0.1};
    d.upper = {2.0, 10.0, 10.0, 2.0};
    constexpr double P = 6000.0, L = 14.0, E = 30e6, G = 12e6;
    constexpr double tau_max = 13600.0, sigma_max = 30000.0, delta_max = 0.25;
    d.objective = [](X x) { return 1.10471 * x[0] * x[0] * x[1] + 0.04811 * x[2] * x[3] * (14.0 + x[1]); };
    auto tau = [](X x) {
        const double t1 = P / (std::sqrt(2.0) * x[0] * x[1]);
        const double m = P * (L + x[1] / 2.0);
        const double r = std::sqrt(x[1] * x[1] / 4.0 + sq((x[0] + x[2]) / 2.0));
        const double j = 2.0 * (std::sqrt(2.0) * x[0] * x[1] * (x[1] * x[1] / 12.0 + sq((x[0] + x[2]) / 2.0)));
        const double t2 = m * r / j;
        return std::sqrt(t1 * t1 + 2.0 * t1 * t2 * x[1] / (2.0 * r) + t2 * t2);
    };
    d.inequalities = {
        [tau](X x) { return tau(x) - tau_max; },
        [](X x) { return 6.0 * P * L / (x[3] * x[2] * x[2]) - sigma_max; },
        [](X x) { return 0.10471 * x[0] * x[0] + 0.04811 * x[2] * x[3] * (14.0 + x[1]) - 5.0; },
        [](X x) { return 4.0 * P * L * L * L / (E * cube(x[2]) * x[3]) - delta_max; },
        [](X x) {
            const double pc = 4.013 * E * std::sqrt(x[2] * x[2] * std::pow(x[3], 6) / 36.0) / (L * L) *
                              (1.0 - x[2] / (2.0 * L) * std::sqrt(E / (4.0 * G)));
            return P - pc;
        },
    };
    // h = b holds at the optimum and is registered as the equality of this problem.
    d.equalities = {
        [](X x) { return x[0] - x[3]; },
    };
    d.f_opt = 1.725;
    d.optimum = Point{0.205730, 3.470489, 9.036624, 0.205730};
    d.optimum_source = "engineering design literature optimum";
    return d;
}

}  // namespace

std::vector<Definition> definitions() {
    return {g1(), g2(), g3(), g4(), g5(), g6(), g7(), g8(), g9(), g10(), g11(), g12(), g13(), pvd(), tcs(), wbd()};
}

}  // namespace esmf::bench::detail
