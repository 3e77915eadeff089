#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esmf/problem.hpp"

namespace esmf::bench::detail {

// Raw problem data before equality relaxation.
struct Definition {
    std::string name;
    Point lower;
    Point upper;
    Evaluator objective;
    std::vector<Evaluator> inequalities;
    std::vector<Evaluator> equalities;
    double f_opt = 0.0;
    std::optional<Point> optimum;
    std::string optimum_source;
};

std::vector<Definition> definitions();

}  // namespace esmf::bench::detail
