#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cachepriv {

/// Packed bit vector, bit i lives in word i/64 at position i%64.
///
/// Used for subfile symbols, cache contents, broadcast payloads and headers.
/// Unused high bits of the last word are always zero, so equality and hashing
/// can work on whole words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

  /// Low `size` bits of `value` (size <= 64).
  static BitVector from_uint(std::uint64_t value, std::size_t size);
  /// Parses a string of '0'/'1' characters, leftmost character is bit 0.
  static BitVector from_string(const std::string& bits);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  /// In-place XOR; throws std::invalid_argument on width mismatch.
  BitVector& operator^=(const BitVector& other);

  /// Bits [offset, offset + length).
  BitVector slice(std::size_t offset, std::size_t length) const;
  /// Appends all bits of `tail`.
  void append(const BitVector& tail);
  /// Appends the low `count` bits of `value`.
  void append_uint(std::uint64_t value, std::size_t count);
  /// Reads `count` (<= 64) bits starting at `offset` as an integer.
  std::uint64_t read_uint(std::size_t offset, std::size_t count) const;

  bool is_zero() const;
  std::size_t popcount() const;

  /// Packed octets, bit i in byte i/8 at position i%8; padding bits are zero.
  std::vector<std::uint8_t> to_bytes() const;
  static BitVector from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t size);

  std::string to_string() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  static std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

BitVector operator^(BitVector a, const BitVector& b);

/// A subfile symbol is an l-bit block.
using SubfileSymbol = BitVector;

/// Bitwise XOR of two equal-width symbols.
SubfileSymbol xor_symbols(const SubfileSymbol& a, const SubfileSymbol& b);

/// Number of bits needed to write values in [0, alphabet): ceil(log2(alphabet)).
std::size_t bits_for_alphabet(std::uint64_t alphabet);

}  // namespace cachepriv
