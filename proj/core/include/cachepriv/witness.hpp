#pragma once

#include <cstdint>

#include "cachepriv/linear.hpp"

namespace cachepriv {

/// Seed the committed (2, 4, 4/3, 1/3) witness was generated with, using
/// corner_request(4, 1). Regenerate with `cachepriv search --regen`.
inline constexpr std::uint64_t kDualWitnessSeed = 1;

/// Frozen (2, 4, 4/3, 1/3) D_RS-non-private linear scheme at t = 3.
LinearSchemeMatrices dual_corner_matrices();

}  // namespace cachepriv
