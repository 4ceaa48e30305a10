#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cachepriv/scheme.hpp"
#include "cachepriv/wire.hpp"

namespace cachepriv {

/// Secret unicast from the server to one user before demands are known.
struct PlacementFrame {
  std::uint32_t user = 0;
  Key key = 0;
  BitVector cache;
  friend bool operator==(const PlacementFrame&, const PlacementFrame&) = default;
};

/// The single broadcast.
struct DeliveryFrame {
  BitVector header;
  BitVector payload;
  friend bool operator==(const DeliveryFrame&, const DeliveryFrame&) = default;
};

struct DecodeReport {
  std::uint32_t user = 0;
  FileIndex file = 0;
  bool match = false;
  BitVector decoded;
  friend bool operator==(const DecodeReport&, const DecodeReport&) = default;
};

/// Placement frames, then the delivery frame, then decode reports.
struct SessionTranscript {
  std::vector<PlacementFrame> placements;
  DeliveryFrame delivery;
  std::vector<DecodeReport> reports;

  bool all_match() const;
  wire::Bytes encode() const;
  /// Throws std::invalid_argument on malformed bytes or frames out of order.
  static SessionTranscript decode(const wire::Bytes& bytes);
  friend bool operator==(const SessionTranscript&, const SessionTranscript&) = default;
};

/// Runs one session with everything fixed. Each user decodes from the wire
/// encoding of its own placement frame, the broadcast frame and its own
/// demand. A wrong decode is recorded with match = false, not thrown.
SessionTranscript run_session(const Scheme& s, const FileStore& files, const DemandVector& demands,
                              const KeyAssignment& keys, const PrivateRandomness& randomness);

/// Draws files (symbols of `width` bits), keys and private randomness from
/// a generator seeded with `seed`, then runs the session.
SessionTranscript simulate_session(const Scheme& s, const DemandVector& demands, std::uint64_t seed,
                                   std::size_t width = 8);

/// User k's view (Z_k, X, D_k) serialized as in serialize_view.
std::string user_view(const SessionTranscript& t, std::size_t user);

}  // namespace cachepriv
