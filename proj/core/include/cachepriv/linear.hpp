#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cachepriv/demand.hpp"
#include "cachepriv/gf2.hpp"
#include "cachepriv/rational.hpp"
#include "cachepriv/scheme.hpp"
#include "cachepriv/verdict.hpp"

namespace cachepriv {

/// A GF(2)-linear non-private scheme over the N*t stacked subfile symbols.
/// Column f*t + s of every matrix is symbol s of file f.
struct LinearSchemeMatrices {
  std::size_t n_files = 0;
  std::size_t n_users = 0;
  std::size_t subpacketization = 0;
  std::size_t cache_dim = 0;
  std::size_t tx_dim = 0;
  /// cache_dim x N*t, one per (virtual) user.
  std::vector<gf2::Matrix> placement;
  /// Served demands; delivery[i] is the tx_dim x N*t matrix for members[i].
  DemandSubset demands;
  std::vector<gf2::Matrix> delivery;

  std::size_t columns() const { return n_files * subpacketization; }
  Rational memory() const;
  Rational rate() const;
  /// Throws std::invalid_argument on inconsistent dimensions.
  void validate() const;
  /// Delivery matrix for `d`; throws std::out_of_range if not served.
  const gf2::Matrix& delivery_for(const DemandVector& d) const;

  friend bool operator==(const LinearSchemeMatrices& a, const LinearSchemeMatrices& b);
};

/// Row selecting symbol `subfile` of `file`.
gf2::Row symbol_row(std::size_t file, std::size_t subfile, std::size_t subpacketization);

/// Decodability as rank conditions: for every demand in `demands` and every
/// user u, each symbol of file d_u lies in the row span of placement_u
/// stacked with delivery_d.
Verdict verify_linear(const LinearSchemeMatrices& m, const DemandSubset& demands);

/// Executable scheme over the matrices' served set. The header carries the
/// demand's index in the served set (the non-private convention where the
/// demand vector is broadcast).
SchemePtr compile_linear(const LinearSchemeMatrices& m, std::string name);

/// The (2, 4, 1/3, 4/3) D_RS scheme: cache of virtual user 2i+j is C_{i,j},
/// transmission for shift vector (i, j) is T_{(i,j)}.
LinearSchemeMatrices tian_2x4_matrices();

}  // namespace cachepriv
