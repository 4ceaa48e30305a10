#pragma once

#include <string>

#include "cachepriv/linear.hpp"

namespace cachepriv {

/// Format tag written to every descriptor.
inline constexpr const char* kDescriptorFormat = "cachepriv-linear/1";

/// JSON text for `m`. Keys:
///   format            kDescriptorFormat
///   files, users      N and the (virtual) user count
///   subpacketization  t
///   cache_dim, tx_dim rows per placement / delivery matrix
///   memory, rate      "p/q", informational (recomputed on import)
///   demand_set        {"kind": "full" | "restricted" | "type", "type": [...]}
///   placement         one matrix per user
///   delivery          [{"demand": [...], "matrix": ...}] per served demand
/// Matrices are rows of '0'/'1' joined by ';', column f*t + s first.
std::string export_descriptor(const LinearSchemeMatrices& m);

/// Parses and validates a descriptor. Throws std::invalid_argument on
/// malformed input, unknown format, or inconsistent dimensions.
LinearSchemeMatrices import_descriptor(const std::string& text);

LinearSchemeMatrices load_descriptor(const std::string& path);
void save_descriptor(const LinearSchemeMatrices& m, const std::string& path);

}  // namespace cachepriv
