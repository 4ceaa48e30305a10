#include "cachepriv/witness.hpp"

#include "cachepriv/demand.hpp"

namespace cachepriv {

// Output of search_linear_scheme(corner_request(4, 1)) with seed 1
// (restart 6). Columns: A1 A2 A3 B1 B2 B3.
LinearSchemeMatrices dual_corner_matrices() {
  static const char* const kPlacement[] = {
      "100000;011000;000100;000011",
      "110000;001000;000100;000001",
      "010000;001000;000101;000011",
      "100000;010000;000110;000001",
  };
  static const char* const kDelivery[] = {"110011", "001111", "100101", "011001"};

  LinearSchemeMatrices m;
  m.n_files = 2;
  m.n_users = 4;
  m.subpacketization = 3;
  m.cache_dim = 4;
  m.tx_dim = 1;
  m.demands = restricted_demand_set(2, 2);
  for (const char* p : kPlacement) m.placement.push_back(gf2::Matrix::parse(p, 6));
  for (const char* d : kDelivery) m.delivery.push_back(gf2::Matrix::parse(d, 6));
  return m;
}

}  // namespace cachepriv
