#include "cachepriv/types.hpp"

#include <limits>
#include <stdexcept>

namespace cachepriv {

void validate_demands(const DemandVector& demands, std::size_t n_files, std::size_t n_users) {
  if (demands.size() != n_users) {
    throw std::invalid_argument("demand vector has " + std::to_string(demands.size()) +
                                " entries, expected " + std::to_string(n_users));
  }
  for (auto d : demands) {
    if (d >= n_files) {
      throw std::invalid_argument("demand " + std::to_string(d) + " out of range for " +
                                  std::to_string(n_files) + " files");
    }
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t RandomnessSpace::cardinality() const {
  std::uint64_t n = 1;
  for (auto r : radices) n = saturating_mul(n, r);
  return n;
}

std::vector<std::uint32_t> RandomnessSpace::unrank(std::uint64_t index) const {
  std::vector<std::uint32_t> digits(radices.size());
  for (std::size_t i = 0; i < radices.size(); ++i) {
    digits[i] = static_cast<std::uint32_t>(index % radices[i]);
    index /= radices[i];
  }
  return digits;
}

std::vector<std::uint32_t> RandomnessSpace::sample(std::mt19937_64& rng) const {
  std::vector<std::uint32_t> digits(radices.size());
  for (std::size_t i = 0; i < radices.size(); ++i) {
    digits[i] = static_cast<std::uint32_t>(uniform_below(rng, radices[i]));
  }
  return digits;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

FileStore::FileStore(std::size_t n_files, std::size_t subpacketization, std::size_t width)
    : subpacketization_(subpacketization),
      width_(width),
      files_(n_files, BitVector(subpacketization * width)) {
  if (width == 0) throw std::invalid_argument("subfile width must be at least 1");
}

FileStore FileStore::from_index(std::size_t n_files, std::size_t subpacketization,
                                std::size_t width, std::uint64_t bits) {
  FileStore store(n_files, subpacketization, width);
  const std::size_t f = store.file_bits();
  if (n_files * f > 64) throw std::invalid_argument("from_index: store exceeds 64 bits");
  for (std::size_t i = 0; i < n_files; ++i) {
    store.files_[i] = BitVector::from_uint(f == 0 ? 0 : bits >> (i * f), f);
  }
  return store;
}

FileStore FileStore::random(std::size_t n_files, std::size_t subpacketization,
                            std::size_t width, std::mt19937_64& rng) {
  FileStore store(n_files, subpacketization, width);
  for (auto& file : store.files_) {
    BitVector bits;
    std::size_t remaining = file.size();
    while (remaining > 0) {
      const std::size_t n = remaining < 64 ? remaining : 64;
      bits.append_uint(rng(), n);
      remaining -= n;
    }
    file = std::move(bits);
  }
  return store;
}

FileStore FileStore::from_files(std::vector<BitVector> files, std::size_t subpacketization,
                                std::size_t width) {
  FileStore store(0, subpacketization, width);
  for (const auto& f : files) {
    if (f.size() != subpacketization * width) {
      throw std::invalid_argument("from_files: file length does not match t*width");
    }
  }
  store.files_ = std::move(files);
  return store;
}

SubfileSymbol FileStore::symbol(std::size_t file, std::size_t subfile) const {
  if (subfile >= subpacketization_) throw std::out_of_range("subfile index out of range");
  return files_.at(file).slice(subfile * width_, width_);
}

void FileStore::set_symbol(std::size_t file, std::size_t subfile, const SubfileSymbol& value) {
  if (subfile >= subpacketization_ || value.size() != width_) {
    throw std::invalid_argument("set_symbol: bad index or width");
  }
  auto& f = files_.at(file);
  for (std::size_t b = 0; b < width_; ++b) f.set(subfile * width_ + b, value.get(b));
}

}  // namespace cachepriv
