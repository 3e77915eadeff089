#pragma once

#include "esmf/kernels.hpp"

namespace esmf::kernels::detail {

const Backend& scalar_table();

// nullptr if the AVX2 translation unit was built without x86 support.
const Backend* avx2_table();

}  // namespace esmf::kernels::detail
