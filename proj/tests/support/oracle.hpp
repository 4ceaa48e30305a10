#pragma once

// Brute-force reference checks used to cross-examine the library. They walk
// the realization space with plain nested counters and compare conditional
// distributions directly, sharing no enumeration or table code with the
// verifier.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "cachepriv/gf2.hpp"
#include "cachepriv/scheme.hpp"

namespace oracle {

using cachepriv::BitVector;
using cachepriv::DemandVector;
using cachepriv::FileStore;
using cachepriv::KeyAssignment;
using cachepriv::PrivateRandomness;
using cachepriv::Scheme;
using Q = boost::rational<std::int64_t>;

struct Realization {
  FileStore files;
  DemandVector demands;
  KeyAssignment keys;
  PrivateRandomness randomness;
};

inline bool next_counter(std::vector<std::uint64_t>& digits, const std::vector<std::uint64_t>& radix) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

/// Visits every (W, D, S, P) with symbols of `width` bits.
inline void for_each_realization(const Scheme& s, std::size_t width,
                                 const std::function<void(const Realization&)>& visit) {
  const auto& p = s.params();
  const std::size_t n_bits = p.n_files * p.subpacketization * width;
  const auto demands = s.served_demands();
  const auto radices = s.randomness(width).radices;
  std::vector<std::uint64_t> key_radix(p.n_users, s.key_alphabet());
  std::vector<std::uint64_t> rand_radix(radices.begin(), radices.end());

  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n_bits); ++w) {
    FileStore files(p.n_files, p.subpacketization, width);
    for (std::size_t f = 0; f < p.n_files; ++f) {
      for (std::size_t j = 0; j < p.subpacketization; ++j) {
        BitVector sym(width);
        for (std::size_t b = 0; b < width; ++b) {
          sym.set(b, (w >> ((f * p.subpacketization + j) * width + b)) & 1U);
        }
        files.set_symbol(f, j, sym);
      }
    }
    for (const auto& d : demands) {
      std::vector<std::uint64_t> keys(p.n_users, 0);
      do {
        std::vector<std::uint64_t> rnd(rand_radix.size(), 0);
        do {
          Realization r{files, d, KeyAssignment(keys.begin(), keys.end()),
                        PrivateRandomness(rnd.begin(), rnd.end())};
          visit(r);
        } while (next_counter(rnd, rand_radix));
      } while (next_counter(keys, key_radix));
    }
  }
}

struct DecodeTally {
  std::uint64_t realizations = 0;
  std::uint64_t user_cases = 0;
  std::uint64_t failures = 0;
};

inline DecodeTally decodability(const Scheme& s, std::size_t width) {
  DecodeTally t;
  for_each_realization(s, width, [&](const Realization& r) {
    ++t.realizations;
    const auto x = s.deliver(r.files, r.demands, r.keys, r.randomness);
    for (std::size_t k = 0; k < s.params().n_users; ++k) {
      ++t.user_cases;
      const auto z = s.place(k, r.keys[k], r.files);
      if (!(s.decode(k, r.demands[k], r.keys[k], x, z) == r.files.file(r.demands[k]))) ++t.failures;
    }
  });
  return t;
}

inline std::string view_text(const cachepriv::CacheContent& z, const cachepriv::DeliveryMessage& x,
                             std::uint32_t own) {
  return z.coded.to_string() + "/" + std::to_string(z.key) + "/" + x.header.to_string() + "/" +
         x.payload.to_string() + "/" + std::to_string(own);
}

inline std::string rest_text(const DemandVector& d, std::size_t user) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i != user) out += std::to_string(d[i]) + ",";
  }
  return out;
}

struct PrivacyReport {
  bool independent = true;
  double mutual_information = 0.0;
};

/// Compares P(view | D_-k = r) across every r, as exact rationals.
inline PrivacyReport privacy(const Scheme& s, std::size_t user, std::size_t width) {
  std::map<std::string, std::map<std::string, std::uint64_t>> by_rest;  // rest -> view -> count
  std::map<std::string, std::uint64_t> rest_total;
  std::map<std::string, std::uint64_t> view_total;
  std::uint64_t total = 0;
  for_each_realization(s, width, [&](const Realization& r) {
    const auto x = s.deliver(r.files, r.demands, r.keys, r.randomness);
    const auto z = s.place(user, r.keys[user], r.files);
    const auto v = view_text(z, x, r.demands[user]);
    const auto rest = rest_text(r.demands, user);
    ++by_rest[rest][v];
    ++rest_total[rest];
    ++view_total[v];
    ++total;
  });
  PrivacyReport out;
  for (const auto& [v, vt] : view_total) {
    const Q marginal(static_cast<std::int64_t>(vt), static_cast<std::int64_t>(total));
    for (const auto& [rest, rt] : rest_total) {
      const auto& row = by_rest[rest];
      const auto it = row.find(v);
      const std::uint64_t c = it == row.end() ? 0 : it->second;
      const Q conditional(static_cast<std::int64_t>(c), static_cast<std::int64_t>(rt));
      if (conditional != marginal) out.independent = false;
      if (c > 0) {
        const double pj = static_cast<double>(c) / static_cast<double>(total);
        out.mutual_information += pj * std::log2(boost::rational_cast<double>(conditional) /
                                                 boost::rational_cast<double>(marginal));
      }
    }
  }
  return out;
}

/// Span membership by trying every XOR combination of the rows.
inline bool in_span_bruteforce(const std::vector<cachepriv::gf2::Row>& rows, cachepriv::gf2::Row target) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows.size()); ++mask) {
    cachepriv::gf2::Row acc = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if ((mask >> i) & 1U) acc ^= rows[i];
    }
    if (acc == target) return true;
  }
  return false;
}

inline std::size_t rank_bruteforce(const std::vector<cachepriv::gf2::Row>& rows) {
  // |span| = 2^rank
  std::vector<cachepriv::gf2::Row> span{0};
  for (auto r : rows) {
    if (std::find(span.begin(), span.end(), r) != span.end()) continue;
    const std::size_t n = span.size();
    for (std::size_t i = 0; i < n; ++i) span.push_back(span[i] ^ r);
  }
  std::size_t rank = 0;
  while ((std::size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

}  // namespace oracle
