#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cachepriv/rational.hpp"
#include "cachepriv/scheme.hpp"

namespace cachepriv {

/// One of the three half-planes bounding the N = K = 2 private region.
enum class RegionConstraint {
  kTwoMPlusR,        // 2M + R >= 2
  kThreeMPlusThreeR, // 3M + 3R >= 5
  kMPlusTwoR,        // M + 2R >= 2
};

std::string to_string(RegionConstraint c);

/// (M, R) with where it came from: a scheme name or "boundary".
struct RatePoint {
  Rational memory;
  Rational rate;
  std::string provenance;
};

/// Membership test for the exact private region at N = K = 2.
struct RateRegion2x2 {
  static bool contains(const Rational& memory, const Rational& rate);
};

/// max{2 - 2M, (5 - 3M)/3, (2 - M)/2, 0}. Throws unless 0 <= M <= 2.
Rational optimal_private_rate_2x2(const Rational& memory);

/// (0, 2), (1/3, 4/3), (4/3, 1/3), (2, 0) with achieving schemes.
std::vector<RatePoint> corner_points_2x2();

/// Violated constraints, in declaration order. Negative M or R is reported
/// by `contains` only.
std::vector<RegionConstraint> check_inequalities(const Rational& memory, const Rational& rate);

/// Schemes plotted by emit_region: (label, scheme).
std::vector<std::pair<std::string, SchemePtr>> region_schemes();

struct RegionOutput {
  std::string csv_path;
  std::string svg_path;
  std::vector<RatePoint> boundary;
  std::vector<RatePoint> measured;
};

/// Writes `<prefix>.csv` and `<prefix>.svg`. The CSV has header
/// `M,R_optimal,scheme,label`; boundary rows are `M,R*(M),boundary,optimal`
/// for M = 0, step, ..., 2, then one row per scheme with its measured M,
/// R*(M) and label `measured_R=<p/q>`. The SVG draws the boundary as
/// polyline id="boundary" and each scheme as a circle id="scheme-<label>"
/// (non-alphanumerics replaced by '-'), on fixed axes [0, 2] x [0, 2].
RegionOutput emit_region(const std::string& prefix, const Rational& step);

}  // namespace cachepriv
