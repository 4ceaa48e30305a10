#include "cachepriv/scheme.hpp"

#include <stdexcept>

namespace cachepriv {

std::string to_string(PrivacyClass c) {
  switch (c) {
    case PrivacyClass::kPrivate:
      return "private";
    case PrivacyClass::kNonPrivate:
      return "non-private";
    case PrivacyClass::kSubsetNonPrivate:
      return "subset-non-private";
  }
  return "unknown";
}

std::vector<DemandVector> Scheme::served_demands() const {
  return all_demands(params().n_files, params().n_users);
}

bool Scheme::serves(const DemandVector& demands) const {
  if (demands.size() != params().n_users) return false;
  for (auto d : demands) {
    if (d >= params().n_files) return false;
  }
  return true;
}

BitVector Scheme::demand_header(const DemandVector& /*demands*/) const {
  throw std::logic_error("scheme '" + params().name + "' has no demand-determined header");
}

std::size_t Scheme::cache_bits(std::size_t width) const {
  const Rational bits = params().memory * static_cast<std::int64_t>(file_bits(width));
  if (bits.denominator() != 1) throw std::logic_error("cache size M*F is not integral");
  return static_cast<std::size_t>(bits.numerator());
}

std::size_t Scheme::payload_bits(std::size_t width) const {
  const Rational bits = params().rate * static_cast<std::int64_t>(file_bits(width));
  if (bits.denominator() != 1) throw std::logic_error("payload size R*F is not integral");
  return static_cast<std::size_t>(bits.numerator());
}

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

std::vector<DemandVector> all_demands(std::size_t n_files, std::size_t n_users) {
  const std::uint64_t count = ipow(n_files, n_users);
  std::vector<DemandVector> out;
  out.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) out.push_back(demand_unrank(r, n_files, n_users));
  return out;
}

std::uint64_t demand_rank(const DemandVector& demands, std::size_t n_files) {
  std::uint64_t r = 0;
  for (auto d : demands) r = r * n_files + d;
  return r;
}

DemandVector demand_unrank(std::uint64_t rank, std::size_t n_files, std::size_t n_users) {
  DemandVector d(n_users);
  for (std::size_t i = n_users; i-- > 0;) {
    d[i] = static_cast<FileIndex>(rank % n_files);
    rank /= n_files;
  }
  return d;
}

}  // namespace cachepriv
