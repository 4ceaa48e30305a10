#include "cachepriv/region.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "cachepriv/lift.hpp"
#include "cachepriv/schemes.hpp"
#include "cachepriv/verifier.hpp"

namespace cachepriv {
namespace {

const Rational kZero(0);
const Rational kTwo(2);

std::string svg_id(const std::string& label) {
  std::string out = label;
  for (auto& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '-';
  }
  return out;
}

// Plot area: 40 px margin, 320 px per axis for [0, 2].
double px(const Rational& v) { return 40.0 + 160.0 * to_double(v); }
double py(const Rational& v) { return 360.0 - 160.0 * to_double(v); }

void write_svg(const std::string& path, const std::vector<RatePoint>& boundary,
               const std::vector<RatePoint>& measured) {
  std::vector<RatePoint> line = boundary;
  for (const auto& c : corner_points_2x2()) line.push_back({c.memory, c.rate, "boundary"});
  std::sort(line.begin(), line.end(), [](const auto& a, const auto& b) { return a.memory < b.memory; });
  line.erase(std::unique(line.begin(), line.end(),
                         [](const auto& a, const auto& b) { return a.memory == b.memory; }),
             line.end());

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  out << "  <rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  out << "  <g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  out << "    <line x1=\"40\" y1=\"360\" x2=\"360\" y2=\"360\"/>\n";
  out << "    <line x1=\"40\" y1=\"360\" x2=\"40\" y2=\"40\"/>\n";
  out << "  </g>\n";
  out << "  <g id=\"ticks\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (int i = 0; i <= 4; ++i) {
    const Rational v(i, 2);
    out << fmt::format("    <text x=\"{:.1f}\" y=\"375\" text-anchor=\"middle\">{}</text>\n", px(v), to_string(v));
    out << fmt::format("    <text x=\"32\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n", py(v) + 3, to_string(v));
  }
  out << "    <text x=\"200\" y=\"392\" text-anchor=\"middle\">M</text>\n";
  out << "    <text x=\"12\" y=\"200\" text-anchor=\"middle\">R</text>\n";
  out << "  </g>\n";
  out << "  <polyline id=\"boundary\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < line.size(); ++i) {
    out << (i ? " " : "") << fmt::format("{:.2f},{:.2f}", px(line[i].memory), py(line[i].rate));
  }
  out << "\"/>\n";
  for (const auto& p : measured) {
    out << fmt::format(
        "  <circle id=\"scheme-{}\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"none\" stroke=\"red\">"
        "<title>{} ({}, {})</title></circle>\n",
        svg_id(p.provenance), px(p.memory), py(p.rate), p.provenance, to_string(p.memory), to_string(p.rate));
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string to_string(RegionConstraint c) {
  switch (c) {
    case RegionConstraint::kTwoMPlusR: return "2M+R>=2";
    case RegionConstraint::kThreeMPlusThreeR: return "3M+3R>=5";
    case RegionConstraint::kMPlusTwoR: return "M+2R>=2";
  }
  return "?";
}

bool RateRegion2x2::contains(const Rational& memory, const Rational& rate) {
  return memory >= kZero && rate >= kZero && check_inequalities(memory, rate).empty();
}

Rational optimal_private_rate_2x2(const Rational& memory) {
  if (memory < kZero || memory > kTwo) throw std::invalid_argument("region: M must lie in [0, 2]");
  return std::max({kTwo - kTwo * memory, (Rational(5) - Rational(3) * memory) / Rational(3),
                   (kTwo - memory) / kTwo, kZero});
}

std::vector<RatePoint> corner_points_2x2() {
  return {
      {Rational(0), Rational(2), "thm1:2,2,0"},
      {Rational(1, 3), Rational(4, 3), "example1"},
      {Rational(4, 3), Rational(1, 3), "dual"},
      {Rational(2), Rational(0), "thm1:2,2,2"},
  };
}

std::vector<RegionConstraint> check_inequalities(const Rational& memory, const Rational& rate) {
  std::vector<RegionConstraint> out;
  if (kTwo * memory + rate < kTwo) out.push_back(RegionConstraint::kTwoMPlusR);
  if (Rational(3) * memory + Rational(3) * rate < Rational(5)) out.push_back(RegionConstraint::kThreeMPlusThreeR);
  if (memory + kTwo * rate < kTwo) out.push_back(RegionConstraint::kMPlusTwoR);
  return out;
}

std::vector<std::pair<std::string, SchemePtr>> region_schemes() {
  return {
      {"thm1:2,2,0", theorem1_scheme(2, 2, Rational(0))},
      {"example1", example1_scheme()},
      {"share:1/3:example1:dual", memory_share(example1_scheme(), dual_example_scheme(), Rational(1, 3))},
      {"dual", dual_example_scheme()},
      {"thm1:2,2,1", theorem1_scheme(2, 2, Rational(1))},
      {"thm1:2,2,2", theorem1_scheme(2, 2, Rational(2))},
  };
}

RegionOutput emit_region(const std::string& prefix, const Rational& step) {
  if (step <= kZero || step > kTwo) throw std::invalid_argument("region: step must lie in (0, 2]");
  RegionOutput result;
  result.csv_path = prefix + ".csv";
  result.svg_path = prefix + ".svg";
  for (Rational m = kZero; m <= kTwo; m += step) {
    result.boundary.push_back({m, optimal_private_rate_2x2(m), "boundary"});
  }
  for (const auto& [label, scheme] : region_schemes()) {
    const auto r = measure_rates(*scheme, 1);
    result.measured.push_back({r.memory, r.rate, label});
  }

  std::ofstream csv(result.csv_path);
  if (!csv) throw std::runtime_error("cannot write " + result.csv_path);
  csv << "M,R_optimal,scheme,label\n";
  for (const auto& p : result.boundary) {
    csv << to_fraction_string(p.memory) << ',' << to_fraction_string(p.rate) << ",boundary,optimal\n";
  }
  for (const auto& p : result.measured) {
    csv << to_fraction_string(p.memory) << ',' << to_fraction_string(optimal_private_rate_2x2(p.memory)) << ','
        << p.provenance << ",measured_R=" << to_fraction_string(p.rate) << '\n';
  }
  if (!csv) throw std::runtime_error("write failed: " + result.csv_path);
  csv.close();
  write_svg(result.svg_path, result.boundary, result.measured);
  return result;
}

}  // namespace cachepriv
