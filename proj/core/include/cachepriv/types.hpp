#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cachepriv/bits.hpp"
#include "cachepriv/rational.hpp"

namespace cachepriv {

using FileIndex = std::uint32_t;
/// One requested file index per user, each in [N].
using DemandVector = std::vector<FileIndex>;
/// Shared key S_k of one user, in [key_alphabet).
using Key = std::uint64_t;
/// Keys of all users, S_0 .. S_{K-1}.
using KeyAssignment = std::vector<Key>;

/// Throws std::invalid_argument unless every entry is < n_files and the
/// length is `n_users`.
void validate_demands(const DemandVector& demands, std::size_t n_files, std::size_t n_users);

/// Multiply with saturation at UINT64_MAX; used for enumeration sizes.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

/// Mixed-radix description of the server's private randomness P.
///
/// A realization is one digit per radix; the space is enumerated in
/// little-endian mixed-radix order.
struct RandomnessSpace {
  std::vector<std::uint32_t> radices;

  std::uint64_t cardinality() const;
  /// Digits of the `index`-th realization.
  std::vector<std::uint32_t> unrank(std::uint64_t index) const;
  std::vector<std::uint32_t> sample(std::mt19937_64& rng) const;
};

using PrivateRandomness = std::vector<std::uint32_t>;

/// Uniform value in [0, bound) from raw engine output (rejection sampling).
/// Platform-independent, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// N files, each split into t subfile symbols of `width` bits.
/// Symbol (i, j) occupies bits [j*width, (j+1)*width) of file i.
class FileStore {
 public:
  FileStore(std::size_t n_files, std::size_t subpacketization, std::size_t width);

  /// Files filled from the low N*t*width bits of `bits`, file-major.
  static FileStore from_index(std::size_t n_files, std::size_t subpacketization,
                              std::size_t width, std::uint64_t bits);
  /// Every symbol drawn independently and uniformly.
  static FileStore random(std::size_t n_files, std::size_t subpacketization,
                          std::size_t width, std::mt19937_64& rng);
  /// Reinterprets the contiguous bits of each file as a store with
  /// different (subpacketization, width) but the same file length.
  static FileStore from_files(std::vector<BitVector> files, std::size_t subpacketization,
                              std::size_t width);

  std::size_t n_files() const { return files_.size(); }
  std::size_t subpacketization() const { return subpacketization_; }
  std::size_t width() const { return width_; }
  std::size_t file_bits() const { return subpacketization_ * width_; }

  const BitVector& file(std::size_t i) const { return files_.at(i); }
  SubfileSymbol symbol(std::size_t file, std::size_t subfile) const;
  void set_symbol(std::size_t file, std::size_t subfile, const SubfileSymbol& value);

 private:
  std::size_t subpacketization_;
  std::size_t width_;
  std::vector<BitVector> files_;
};

/// Z_k: coded cache bits (counted toward M) plus the stored key S_k.
struct CacheContent {
  BitVector coded;
  Key key = 0;
};

/// X = (payload, header). Only the payload counts toward R.
struct DeliveryMessage {
  BitVector payload;
  BitVector header;
};

}  // namespace cachepriv
