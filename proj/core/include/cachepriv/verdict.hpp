#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace cachepriv {

/// Outcome of one verification run. `passed` holds iff there is no
/// counterexample.
struct Verdict {
  std::string check;        // "decodability", "privacy(user=0)", ...
  bool passed = true;
  std::optional<std::string> counterexample;
  /// Informational only; never used to decide a verdict.
  double mutual_information_bits = 0.0;
  std::uint64_t atoms = 0;  // enumerated atoms (W, D, S, P)
  std::uint64_t cases = 0;  // individual assertions evaluated

  void fail(std::string what) {
    if (passed) counterexample = std::move(what);
    passed = false;
  }
};

/// One JSON object per verdict, for CI consumption.
std::string to_json(const Verdict& v);

}  // namespace cachepriv
