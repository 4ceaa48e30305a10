#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cachepriv/rational.hpp"
#include "cachepriv/scheme.hpp"

namespace cachepriv {

/// Payload slot of each user's file in the N > K branch of the general
/// private scheme. Users with equal demands share a slot; distinct demanded
/// files get distinct slots.
using PositionAssignment = std::vector<std::uint32_t>;

/// Slots for `demands` given Lehmer digits (digit m in [K - m]). Each new
/// distinct file, in user order, takes the digit-th smallest unused slot.
PositionAssignment assign_positions(const DemandVector& demands,
                                    const std::vector<std::uint32_t>& lehmer, std::size_t n_slots);

/// Private scheme for any (N, K) with R = min(N, K) * (1 - M/N).
///
/// N <= K: identical caches of M/N of every file, the broadcast carries all
/// uncached parts and no header. N > K: K payload slots, demanded files at
/// random positions, filler elsewhere, header J_k = (P_k + S_k) mod K.
/// Private randomness is the Lehmer code of the position choice followed by
/// one binary digit per filler bit.
SchemePtr theorem1_scheme(std::size_t n_files, std::size_t n_users, const Rational& memory);

/// Lifts an (N, N*K, M, R) D_RS-non-private scheme to an (N, K, M, R)
/// private scheme. User k with key S_k in [N] holds virtual user
/// (k*N + S_k)'s cache; the server sends the inner transmission for the
/// expanded demand together with the header S - D (mod N).
SchemePtr lift_private(SchemePtr non_private, std::size_t n_files, std::size_t n_users);

/// (2, 2, 1/3, 4/3) private scheme: lift of tian_2x4_scheme.
SchemePtr example1_scheme();

/// (2, 2, 4/3, 1/3) private scheme: lift of dual_corner_scheme.
SchemePtr dual_example_scheme();

}  // namespace cachepriv
