#pragma once

#include <cstddef>

#include "cachepriv/linear.hpp"
#include "cachepriv/rational.hpp"
#include "cachepriv/scheme.hpp"

namespace cachepriv {

/// Every user caches the same M/N fraction of each file; the server
/// broadcasts all uncached parts, so R = N - M for any demand vector.
/// Non-private, serves all of [N]^K. Throws if M is outside [0, N].
SchemePtr baseline_uncoded(std::size_t n_files, std::size_t n_users, const Rational& memory);

/// The (2, 4, 1/3, 4/3) D_RS-non-private scheme built from its cache and
/// transmission tables. Delivery outside D_RS throws.
SchemePtr tian_2x4_scheme();

/// The (2, 4, 4/3, 1/3) D_RS-non-private scheme from the committed search
/// witness.
SchemePtr dual_corner_scheme();

/// Memory sharing: the first lambda fraction of every file is served by `a`,
/// the rest by `b`. Subpacketization is the smallest t with integral
/// segments. Keys and private randomness are products, headers concatenate.
/// lambda = 1 returns `a` and lambda = 0 returns `b` unchanged.
SchemePtr memory_share(SchemePtr a, SchemePtr b, const Rational& lambda);

/// Negative control: `inner`'s delivery with the demand vector appended to
/// the header in plain text, labeled as a private scheme.
SchemePtr with_plaintext_demand_header(SchemePtr inner);

}  // namespace cachepriv
