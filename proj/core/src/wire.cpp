#include "cachepriv/wire.hpp"

#include <stdexcept>
#include <string>

namespace cachepriv::wire {

void Writer::u32(std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void Writer::u64(std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void Writer::bits(const BitVector& v) {
  if (v.size() > UINT32_MAX) throw std::length_error("wire: bit block too long");
  u32(static_cast<std::uint32_t>(v.size()));
  const auto bytes = v.to_bytes();
  out_.insert(out_.end(), bytes.begin(), bytes.end());
}

void Reader::need(std::size_t n) const {
  if (in_.size() - pos_ < n) throw std::invalid_argument("wire: truncated payload");
}

std::uint8_t Reader::u8() {
  need(1);
  return in_[pos_++];
}

std::uint32_t Reader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * b);
  return v;
}

std::uint64_t Reader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * b);
  return v;
}

BitVector Reader::bits() {
  const std::size_t n = u32();
  const std::size_t len = (n + 7) / 8;
  need(len);
  std::vector<std::uint8_t> bytes(in_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                  in_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
  pos_ += len;
  if (n % 8 != 0 && (bytes.back() >> (n % 8)) != 0) throw std::invalid_argument("wire: nonzero padding bits");
  return BitVector::from_bytes(bytes, n);
}

void Reader::finish() const {
  if (!done()) throw std::invalid_argument("wire: trailing bytes in payload");
}

void append_frame(Bytes& out, const Frame& frame) {
  if (frame.payload.size() > UINT32_MAX) throw std::length_error("wire: frame too long");
  out.push_back(static_cast<std::uint8_t>(frame.type));
  const auto n = static_cast<std::uint32_t>(frame.payload.size());
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(n >> (8 * b)));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
}

Bytes encode_frames(const std::vector<Frame>& frames) {
  Bytes out;
  for (const auto& f : frames) append_frame(out, f);
  return out;
}

std::vector<Frame> decode_frames(const Bytes& bytes) {
  std::vector<Frame> frames;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 5) throw std::invalid_argument("wire: truncated frame header");
    const auto type = bytes[pos];
    if (type < 0x01 || type > 0x03) throw std::invalid_argument("wire: unknown frame type " + std::to_string(type));
    std::uint32_t n = 0;
    for (int b = 0; b < 4; ++b) n |= static_cast<std::uint32_t>(bytes[pos + 1 + b]) << (8 * b);
    pos += 5;
    if (bytes.size() - pos < n) throw std::invalid_argument("wire: truncated frame payload");
    Frame f;
    f.type = static_cast<FrameType>(type);
    f.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                     bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += n;
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace cachepriv::wire
