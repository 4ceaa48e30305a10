#include "cachepriv/bits.hpp"

#include <bit>
#include <stdexcept>

namespace cachepriv {

BitVector BitVector::from_uint(std::uint64_t value, std::size_t size) {
  if (size > 64) throw std::invalid_argument("from_uint: size exceeds 64 bits");
  BitVector v(size);
  if (size > 0) v.words_[0] = size == 64 ? value : (value & ((std::uint64_t{1} << size) - 1));
  return v;
}

BitVector BitVector::from_string(const std::string& bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("from_string: expected only '0' and '1'");
    }
  }
  return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (size_ != other.size_) throw std::invalid_argument("xor: width mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVector BitVector::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > size_) throw std::out_of_range("slice: range exceeds vector");
  BitVector out(length);
  std::size_t i = 0;
  // Word-at-a-time copy; the tail is masked by read_uint.
  for (; i + 64 <= length; i += 64) out.words_[i >> 6] = read_uint(offset + i, 64);
  if (i < length) out.words_[i >> 6] = read_uint(offset + i, length - i);
  return out;
}

void BitVector::append(const BitVector& tail) {
  std::size_t i = 0;
  for (; i + 64 <= tail.size_; i += 64) append_uint(tail.words_[i >> 6], 64);
  if (i < tail.size_) append_uint(tail.words_[i >> 6], tail.size_ - i);
}

void BitVector::append_uint(std::uint64_t value, std::size_t count) {
  if (count == 0) return;
  if (count < 64) value &= (std::uint64_t{1} << count) - 1;
  const std::size_t shift = size_ & 63;
  size_ += count;
  words_.resize(word_count(size_), 0);
  const std::size_t first = (size_ - count) >> 6;
  words_[first] |= value << shift;
  if (shift != 0 && shift + count > 64) words_[first + 1] |= value >> (64 - shift);
}

std::uint64_t BitVector::read_uint(std::size_t offset, std::size_t count) const {
  if (count > 64 || offset + count > size_) throw std::out_of_range("read_uint: bad range");
  if (count == 0) return 0;
  const std::size_t w = offset >> 6;
  const std::size_t shift = offset & 63;
  std::uint64_t value = words_[w] >> shift;
  if (shift != 0 && shift + count > 64) value |= words_[w + 1] << (64 - shift);
  if (count < 64) value &= (std::uint64_t{1} << count) - 1;
  return value;
}

bool BitVector::is_zero() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
  std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<std::uint8_t>(words_[b >> 3] >> ((b & 7) * 8));
  }
  return out;
}

BitVector BitVector::from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t size) {
  if (bytes.size() != (size + 7) / 8) throw std::invalid_argument("from_bytes: length mismatch");
  BitVector v(size);
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    v.words_[b >> 3] |= std::uint64_t{bytes[b]} << ((b & 7) * 8);
  }
  if ((size & 63) != 0 && !v.words_.empty()) v.words_.back() &= (std::uint64_t{1} << (size & 63)) - 1;
  return v;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BitVector operator^(BitVector a, const BitVector& b) {
  a ^= b;
  return a;
}

SubfileSymbol xor_symbols(const SubfileSymbol& a, const SubfileSymbol& b) { return a ^ b; }

std::size_t bits_for_alphabet(std::uint64_t alphabet) {
  if (alphabet <= 1) return 0;
  return static_cast<std::size_t>(std::bit_width(alphabet - 1));
}

}  // namespace cachepriv
