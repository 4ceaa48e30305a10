#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cachepriv/types.hpp"

namespace cachepriv {

/// Right cyclic shift applied `times` times: one shift maps
/// (v_1, ..., v_N) to (v_N, v_1, ..., v_{N-1}). Negative counts shift left.
std::vector<FileIndex> cyclic_shift(const std::vector<FileIndex>& v, std::int64_t times);

/// Componentwise (keys[k] - demands[k]) mod n_files.
std::vector<FileIndex> mod_sub_vec(const KeyAssignment& keys, const DemandVector& demands,
                                   std::size_t n_files);

/// Expanded demand vector for the N*K virtual users: block k is the
/// identity (0, ..., N-1) cyclically shifted (S_k - D_k) mod N times.
DemandVector expand_demand(const DemandVector& demands, const KeyAssignment& keys,
                           std::size_t n_files);

/// Same expansion driven directly by a shift vector (the broadcast header).
DemandVector expand_shifts(const std::vector<FileIndex>& shifts, std::size_t n_files);

/// Demand-set label.
enum class DemandSetKind { kFull, kType, kRestricted };

/// A set of demand vectors of length `n_users` over `n_files` files.
struct DemandSubset {
  std::size_t n_files = 0;
  std::size_t n_users = 0;
  DemandSetKind kind = DemandSetKind::kFull;
  std::vector<DemandVector> members;
  /// For kRestricted: the per-block shift counts c(d) of each member.
  std::vector<std::vector<FileIndex>> shifts;
  /// For kType: the type vector.
  std::vector<std::size_t> type;

  bool contains(const DemandVector& d) const;
  /// Index of `d` in members; throws std::out_of_range if absent.
  std::size_t index_of(const DemandVector& d) const;
  std::string label() const;
};

/// D_RS for an (N, N*K) problem: all vectors whose K length-N blocks are
/// cyclic shifts of (0, ..., N-1). Ordered by shift vector, first block
/// most significant, matching the (i, j) transmission labels.
DemandSubset restricted_demand_set(std::size_t n_files, std::size_t n_stacks);

/// Every demand vector of [N]^K.
DemandSubset full_demand_set(std::size_t n_files, std::size_t n_users);

/// Type class of `type` in [N]^K, K = sum(type).
DemandSubset type_class(const std::vector<std::size_t>& type);

/// Histogram of `demands` over [n_files].
std::vector<std::size_t> demand_type(const DemandVector& demands, std::size_t n_files);

}  // namespace cachepriv
