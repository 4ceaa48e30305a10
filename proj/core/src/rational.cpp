#include "cachepriv/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace cachepriv {
namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("malformed rational: '" + whole + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string_view s(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s, text));
  const auto den = parse_int(s.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rational(parse_int(s.substr(0, slash), text), den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return to_fraction_string(r);
}

std::string to_fraction_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace cachepriv
