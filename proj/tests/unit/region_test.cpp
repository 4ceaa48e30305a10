#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cachepriv/region.hpp"
#include "cachepriv/verifier.hpp"

using namespace cachepriv;

namespace {

// Piecewise-linear interpolation through the achievable corners.
Rational corner_interpolation(const Rational& m) {
  const std::vector<std::pair<Rational, Rational>> pts = {
      {Rational(0), Rational(2)}, {Rational(1, 3), Rational(4, 3)},
      {Rational(4, 3), Rational(1, 3)}, {Rational(2), Rational(0)}};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& [m0, r0] = pts[i];
    const auto& [m1, r1] = pts[i + 1];
    if (m >= m0 && m <= m1) return r0 + (r1 - r0) * (m - m0) / (m1 - m0);
  }
  throw std::out_of_range("memory");
}

// Smallest multiple of 1/denominator inside the region.
Rational grid_minimum(const Rational& m, std::int64_t denominator) {
  for (std::int64_t i = 0;; ++i) {
    const Rational r(i, denominator);
    if (RateRegion2x2::contains(m, r)) return r;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string temp_prefix(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cachepriv_region_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST(Region, KnownValues) {
  EXPECT_EQ(optimal_private_rate_2x2(Rational(0)), Rational(2));
  EXPECT_EQ(optimal_private_rate_2x2(Rational(1, 3)), Rational(4, 3));
  EXPECT_EQ(optimal_private_rate_2x2(Rational(1)), Rational(2, 3));
  EXPECT_EQ(optimal_private_rate_2x2(Rational(4, 3)), Rational(1, 3));
  EXPECT_EQ(optimal_private_rate_2x2(Rational(2)), Rational(0));
  EXPECT_THROW(optimal_private_rate_2x2(Rational(-1, 6)), std::invalid_argument);
  EXPECT_THROW(optimal_private_rate_2x2(Rational(13, 6)), std::invalid_argument);
}

TEST(Region, MatchesCornerInterpolation) {
  for (std::int64_t i = 0; i <= 72; ++i) {
    const Rational m(i, 36);
    EXPECT_EQ(optimal_private_rate_2x2(m), corner_interpolation(m)) << to_string(m);
  }
}

TEST(Region, MatchesMembershipGrid) {
  // Denominator 36 * 6 holds every boundary value for M on the 1/36 grid.
  for (std::int64_t i = 0; i <= 72; ++i) {
    const Rational m(i, 36);
    EXPECT_EQ(optimal_private_rate_2x2(m), grid_minimum(m, 216)) << to_string(m);
  }
}

TEST(Region, ConvexAndNonIncreasing) {
  std::vector<Rational> r;
  for (std::int64_t i = 0; i <= 48; ++i) r.push_back(optimal_private_rate_2x2(Rational(i, 24)));
  for (std::size_t i = 0; i + 1 < r.size(); ++i) EXPECT_LE(r[i + 1], r[i]);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) EXPECT_LE(r[i] + r[i], r[i - 1] + r[i + 1]);
}

TEST(Region, Inequalities) {
  EXPECT_TRUE(check_inequalities(Rational(1), Rational(2, 3)).empty());
  EXPECT_EQ(check_inequalities(Rational(1, 6), Rational(3, 2)),
            (std::vector<RegionConstraint>{RegionConstraint::kTwoMPlusR}));
  EXPECT_EQ(check_inequalities(Rational(1), Rational(1, 2)),
            (std::vector<RegionConstraint>{RegionConstraint::kThreeMPlusThreeR}));
  EXPECT_EQ(check_inequalities(Rational(3, 2), Rational(1, 5)),
            (std::vector<RegionConstraint>{RegionConstraint::kMPlusTwoR}));
  EXPECT_EQ(check_inequalities(Rational(0), Rational(0)).size(), 3u);
  EXPECT_EQ(to_string(RegionConstraint::kThreeMPlusThreeR), "3M+3R>=5");
  EXPECT_FALSE(RateRegion2x2::contains(Rational(-1), Rational(5)));
  EXPECT_FALSE(RateRegion2x2::contains(Rational(3), Rational(-1)));
  EXPECT_TRUE(RateRegion2x2::contains(Rational(3), Rational(0)));
}

TEST(Region, CornersAreOnTheBoundary) {
  const auto corners = corner_points_2x2();
  ASSERT_EQ(corners.size(), 4u);
  for (const auto& c : corners) {
    EXPECT_EQ(optimal_private_rate_2x2(c.memory), c.rate) << c.provenance;
    EXPECT_FALSE(c.provenance.empty());
  }
}

TEST(Region, SchemesAchieveTheirPoints) {
  for (const auto& [label, s] : region_schemes()) {
    const auto r = measure_rates(*s, 1);
    EXPECT_TRUE(RateRegion2x2::contains(r.memory, r.rate)) << label;
    EXPECT_GE(r.rate, optimal_private_rate_2x2(r.memory)) << label;
  }
}

TEST(Region, EmitWritesCsvAndSvg) {
  const auto prefix = temp_prefix("fig");
  const auto out = emit_region(prefix, Rational(1, 6));
  EXPECT_EQ(out.csv_path, prefix + ".csv");
  EXPECT_EQ(out.svg_path, prefix + ".svg");
  ASSERT_EQ(out.boundary.size(), 13u);

  const auto rows = lines_of(slurp(out.csv_path));
  ASSERT_EQ(rows.size(), 1 + 13 + out.measured.size());
  EXPECT_EQ(rows[0], "M,R_optimal,scheme,label");
  EXPECT_EQ(rows[1], "0/1,2/1,boundary,optimal");
  EXPECT_EQ(rows[3], "1/3,4/3,boundary,optimal");
  EXPECT_EQ(rows[13], "2/1,0/1,boundary,optimal");
  EXPECT_EQ(out.boundary[8].rate, Rational(1, 3));
  bool saw_dual = false;
  for (std::size_t i = 14; i < rows.size(); ++i) {
    EXPECT_NE(rows[i].find(",measured_R="), std::string::npos) << rows[i];
    if (rows[i].rfind("4/3,1/3,", 0) == 0) saw_dual = true;
  }
  EXPECT_TRUE(saw_dual);

  const auto svg = slurp(out.svg_path);
  EXPECT_NE(svg.find("id=\"boundary\""), std::string::npos);
  for (const auto& p : out.measured) {
    std::string id = "scheme-";
    for (char c : p.provenance) id += std::isalnum(static_cast<unsigned char>(c)) ? c : '-';
    EXPECT_NE(svg.find("id=\"" + id + "\""), std::string::npos) << id;
  }
}

TEST(Region, EmitIsDeterministic) {
  const auto a = emit_region(temp_prefix("a"), Rational(1, 6));
  const auto b = emit_region(temp_prefix("b"), Rational(1, 6));
  EXPECT_EQ(slurp(a.csv_path), slurp(b.csv_path));
  EXPECT_EQ(slurp(a.svg_path), slurp(b.svg_path));
}
