#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cachepriv/demand.hpp"
#include "cachepriv/gf2.hpp"
#include "cachepriv/linear.hpp"

namespace cachepriv {

enum class SearchStrategy {
  /// Random placements with exact per-demand delivery completion.
  kRandomRestarts,
  /// Complete depth-first enumeration over whichever side (placements or
  /// deliveries) has the smaller product space.
  kExhaustive,
};

struct SearchRequest {
  std::size_t n_files = 2;
  std::size_t n_users = 4;
  std::size_t subpacketization = 3;
  std::size_t cache_dim = 0;
  std::size_t tx_dim = 0;
  DemandSubset demands;
  SearchStrategy strategy = SearchStrategy::kRandomRestarts;
  std::uint64_t seed = 1;
  /// Restarts for kRandomRestarts; visited nodes for kExhaustive.
  std::uint64_t budget = 1'000'000;
  std::size_t workers = 1;
};

struct SearchResult {
  std::optional<LinearSchemeMatrices> scheme;
  /// Restart index (or node count) at which the witness was found.
  std::uint64_t witness_index = 0;
  std::uint64_t work = 0;
  /// True when the budget ran out before success. For kExhaustive, false
  /// with no scheme means the complete space holds no witness.
  bool budget_exhausted = false;
};

/// Searches for GF(2) linear matrices passing verify_linear on
/// `request.demands`. Results depend only on (request, seed), never on the
/// worker count: the lowest successful restart index wins.
SearchResult search_linear_scheme(const SearchRequest& request);

/// Request for the (2, 4) D_RS corner with given cache and transmission
/// dimensions at t = 3 and the default seed.
SearchRequest corner_request(std::size_t cache_dim, std::size_t tx_dim);

/// First candidate delivery (in `candidates` order) letting every user
/// decode its file of `demand`, or nullopt.
std::optional<gf2::Matrix> complete_delivery(const std::vector<gf2::Matrix>& placement,
                                             const DemandVector& demand,
                                             std::size_t subpacketization,
                                             const std::vector<gf2::Matrix>& candidates);

/// Canonical representative of a placement's row space under independent
/// subfile relabeling within each file: the lexicographically smallest RREF.
gf2::Matrix canonical_placement(const gf2::Matrix& placement, std::size_t n_files,
                                std::size_t subpacketization);

}  // namespace cachepriv
