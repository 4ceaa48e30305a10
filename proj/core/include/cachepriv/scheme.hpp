#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cachepriv/rational.hpp"
#include "cachepriv/types.hpp"

namespace cachepriv {

enum class PrivacyClass {
  kPrivate,        // every demand in [N]^K, demand-private
  kNonPrivate,     // every demand in [N]^K, no privacy claim
  kSubsetNonPrivate,  // only an explicit served demand subset
};

std::string to_string(PrivacyClass c);

/// Declared (N, K, M, R, t) of a scheme. Rationals are exact.
struct SchemeParams {
  std::string name;
  std::size_t n_files = 0;
  std::size_t n_users = 0;
  std::size_t subpacketization = 1;
  Rational memory{0};
  Rational rate{0};
};

/// An executable caching scheme: placement, delivery and per-user decoding.
///
/// Implementations are immutable after construction, so one instance can be
/// shared across verifier workers. All randomness is passed in explicitly.
class Scheme {
 public:
  virtual ~Scheme() = default;

  virtual const SchemeParams& params() const = 0;
  virtual PrivacyClass privacy() const = 0;

  /// Each S_k is uniform on [key_alphabet()).
  virtual std::uint64_t key_alphabet() const { return 1; }
  /// The private randomness P at subfile width `width`.
  virtual RandomnessSpace randomness(std::size_t /*width*/) const { return {}; }
  /// Size of the header J in bits; independent of the subfile width.
  virtual std::size_t header_bits() const = 0;

  /// Demand vectors delivery is defined on. Private and plain non-private
  /// schemes serve all of [N]^K.
  virtual std::vector<DemandVector> served_demands() const;
  virtual bool serves(const DemandVector& demands) const;

  virtual CacheContent place(std::size_t user, Key key, const FileStore& files) const = 0;
  virtual DeliveryMessage deliver(const FileStore& files, const DemandVector& demands,
                                  std::span<const Key> keys,
                                  const PrivateRandomness& randomness) const = 0;
  /// Returns the t*width bits user `user` reconstructs for its demand.
  virtual BitVector decode(std::size_t user, FileIndex demand, Key key,
                           const DeliveryMessage& message, const CacheContent& cache) const = 0;

  /// For non-private schemes the header is a function of the demand vector
  /// alone. The lifting construction uses this to rebuild the header its
  /// inner decoder expects. Throws for schemes whose header is randomized.
  virtual BitVector demand_header(const DemandVector& demands) const;

  std::size_t file_bits(std::size_t width) const { return params().subpacketization * width; }
  /// M*F and R*F; both are integers by construction.
  std::size_t cache_bits(std::size_t width) const;
  std::size_t payload_bits(std::size_t width) const;
};

using SchemePtr = std::shared_ptr<const Scheme>;

/// All N^K demand vectors in lexicographic order (user 0 most significant).
std::vector<DemandVector> all_demands(std::size_t n_files, std::size_t n_users);

/// Lexicographic rank of `demands` among all_demands(n_files, demands.size()).
std::uint64_t demand_rank(const DemandVector& demands, std::size_t n_files);
DemandVector demand_unrank(std::uint64_t rank, std::size_t n_files, std::size_t n_users);

/// Integer power with saturation.
std::uint64_t ipow(std::uint64_t base, std::size_t exp);

}  // namespace cachepriv
