#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace cachepriv {

/// Exact memory/rate values; always normalized with a positive denominator.
/// Compare only against other Rationals: boost 1.74 mixed integer equality
/// recurses under C++20 rewritten comparisons.
using Rational = boost::rational<std::int64_t>;

/// Accepts "p/q", "p" or "-p/q". Throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Always "p/q", even for integers (CSV schema).
std::string to_fraction_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace cachepriv
