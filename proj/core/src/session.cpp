#include "cachepriv/session.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "cachepriv/verifier.hpp"

namespace cachepriv {
namespace {

wire::Frame placement_frame(const PlacementFrame& p) {
  wire::Writer w;
  w.u32(p.user);
  w.u64(p.key);
  w.bits(p.cache);
  return {wire::FrameType::kPlacement, w.take()};
}

wire::Frame delivery_frame(const DeliveryFrame& d) {
  wire::Writer w;
  w.bits(d.header);
  w.bits(d.payload);
  return {wire::FrameType::kDelivery, w.take()};
}

wire::Frame report_frame(const DecodeReport& r) {
  wire::Writer w;
  w.u32(r.user);
  w.u32(r.file);
  w.u8(r.match ? 1 : 0);
  w.bits(r.decoded);
  return {wire::FrameType::kDecodeReport, w.take()};
}

PlacementFrame parse_placement(const wire::Bytes& payload) {
  wire::Reader r(payload);
  PlacementFrame p;
  p.user = r.u32();
  p.key = r.u64();
  p.cache = r.bits();
  r.finish();
  return p;
}

DeliveryFrame parse_delivery(const wire::Bytes& payload) {
  wire::Reader r(payload);
  DeliveryFrame d;
  d.header = r.bits();
  d.payload = r.bits();
  r.finish();
  return d;
}

DecodeReport parse_report(const wire::Bytes& payload) {
  wire::Reader r(payload);
  DecodeReport d;
  d.user = r.u32();
  d.file = r.u32();
  const auto flag = r.u8();
  if (flag > 1) throw std::invalid_argument("wire: match flag must be 0 or 1");
  d.match = flag == 1;
  d.decoded = r.bits();
  r.finish();
  return d;
}

// A user holds nothing but what arrives on the wire and its own demand.
class User {
 public:
  User(const Scheme& s, const wire::Frame& placement) : scheme_(s), placement_(parse_placement(placement.payload)) {}

  DecodeReport decode(const wire::Frame& broadcast, FileIndex demand) const {
    const DeliveryFrame d = parse_delivery(broadcast.payload);
    const CacheContent cache{placement_.cache, placement_.key};
    const DeliveryMessage message{d.payload, d.header};
    DecodeReport r;
    r.user = placement_.user;
    r.file = demand;
    r.decoded = scheme_.decode(placement_.user, demand, placement_.key, message, cache);
    return r;
  }

 private:
  const Scheme& scheme_;
  PlacementFrame placement_;
};

}  // namespace

bool SessionTranscript::all_match() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.match; });
}

wire::Bytes SessionTranscript::encode() const {
  wire::Bytes out;
  for (const auto& p : placements) wire::append_frame(out, placement_frame(p));
  wire::append_frame(out, delivery_frame(delivery));
  for (const auto& r : reports) wire::append_frame(out, report_frame(r));
  return out;
}

SessionTranscript SessionTranscript::decode(const wire::Bytes& bytes) {
  SessionTranscript t;
  bool delivered = false;
  for (const auto& f : wire::decode_frames(bytes)) {
    switch (f.type) {
      case wire::FrameType::kPlacement:
        if (delivered) throw std::invalid_argument("transcript: placement after delivery");
        t.placements.push_back(parse_placement(f.payload));
        break;
      case wire::FrameType::kDelivery:
        if (delivered) throw std::invalid_argument("transcript: second delivery frame");
        t.delivery = parse_delivery(f.payload);
        delivered = true;
        break;
      case wire::FrameType::kDecodeReport:
        if (!delivered) throw std::invalid_argument("transcript: decode report before delivery");
        t.reports.push_back(parse_report(f.payload));
        break;
    }
  }
  if (!delivered) throw std::invalid_argument("transcript: no delivery frame");
  return t;
}

SessionTranscript run_session(const Scheme& s, const FileStore& files, const DemandVector& demands,
                              const KeyAssignment& keys, const PrivateRandomness& randomness) {
  const auto& p = s.params();
  validate_demands(demands, p.n_files, p.n_users);
  if (keys.size() != p.n_users) throw std::invalid_argument("session: one key per user");
  if (!s.serves(demands)) throw std::invalid_argument("session: demand vector not served by " + p.name);

  SessionTranscript t;
  std::vector<wire::Frame> placement_wire;
  for (std::size_t k = 0; k < p.n_users; ++k) {
    const CacheContent c = s.place(k, keys[k], files);
    t.placements.push_back({static_cast<std::uint32_t>(k), c.key, c.coded});
    placement_wire.push_back(placement_frame(t.placements.back()));
  }
  const DeliveryMessage m = s.deliver(files, demands, keys, randomness);
  t.delivery = {m.header, m.payload};
  const wire::Frame broadcast = delivery_frame(t.delivery);
  for (std::size_t k = 0; k < p.n_users; ++k) {
    DecodeReport r = User(s, placement_wire[k]).decode(broadcast, demands[k]);
    r.match = r.decoded == files.file(demands[k]);
    t.reports.push_back(std::move(r));
  }
  return t;
}

SessionTranscript simulate_session(const Scheme& s, const DemandVector& demands, std::uint64_t seed,
                                   std::size_t width) {
  const auto& p = s.params();
  std::mt19937_64 rng(seed);
  const FileStore files = FileStore::random(p.n_files, p.subpacketization, width, rng);
  KeyAssignment keys(p.n_users);
  for (auto& k : keys) k = uniform_below(rng, s.key_alphabet());
  const PrivateRandomness randomness = s.randomness(width).sample(rng);
  return run_session(s, files, demands, keys, randomness);
}

std::string user_view(const SessionTranscript& t, std::size_t user) {
  if (user >= t.placements.size() || user >= t.reports.size()) throw std::out_of_range("session: no such user");
  const auto& p = t.placements[user];
  return serialize_view(CacheContent{p.cache, p.key}, DeliveryMessage{t.delivery.payload, t.delivery.header},
                        t.reports[user].file);
}

}  // namespace cachepriv
