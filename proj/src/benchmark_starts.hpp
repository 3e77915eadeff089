#pragma once

#include <string>
#include <vector>

#include "esmf/problem.hpp"

namespace esmf::bench::detail {

struct StartRecord {
    std::string name;
    bool feasible = false;
    Point x;
    std::string provenance;
};

// Version-controlled start points, produced by tools/find_starts.
const std::vector<StartRecord>& stored_starts();

}  // namespace esmf::bench::detail
