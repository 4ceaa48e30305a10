#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cachepriv/bits.hpp"

namespace cachepriv::wire {

enum class FrameType : std::uint8_t {
  kPlacement = 0x01,
  kDelivery = 0x02,
  kDecodeReport = 0x03,
};

using Bytes = std::vector<std::uint8_t>;

struct Frame {
  FrameType type = FrameType::kPlacement;
  Bytes payload;
};

/// type octet, 4-octet little-endian length, payload.
void append_frame(Bytes& out, const Frame& frame);
Bytes encode_frames(const std::vector<Frame>& frames);
/// Throws std::invalid_argument on truncation, unknown types or trailing bytes.
std::vector<Frame> decode_frames(const Bytes& bytes);

/// Builds and parses frame payloads field by field.
class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  /// 4-octet little-endian bit length, then the bits packed LSB first.
  void bits(const BitVector& v);
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(const Bytes& in) : in_(in) {}
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  BitVector bits();
  bool done() const { return pos_ == in_.size(); }
  /// Throws unless every byte was consumed.
  void finish() const;

 private:
  void need(std::size_t n) const;
  const Bytes& in_;
  std::size_t pos_ = 0;
};

}  // namespace cachepriv::wire
