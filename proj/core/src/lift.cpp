#include "cachepriv/lift.hpp"

#include <algorithm>
#include <stdexcept>

#include "cachepriv/demand.hpp"
#include "cachepriv/schemes.hpp"

namespace cachepriv {

PositionAssignment assign_positions(const DemandVector& demands,
                                    const std::vector<std::uint32_t>& lehmer, std::size_t n_slots) {
  std::vector<std::uint32_t> unused(n_slots);
  for (std::size_t i = 0; i < n_slots; ++i) unused[i] = static_cast<std::uint32_t>(i);
  PositionAssignment positions(demands.size());
  std::size_t next_digit = 0;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    bool repeated = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (demands[j] == demands[i]) {
        positions[i] = positions[j];
        repeated = true;
        break;
      }
    }
    if (repeated) continue;
    if (unused.empty() || next_digit >= lehmer.size()) {
      throw std::invalid_argument("assign_positions: more distinct demands than slots");
    }
    const std::uint32_t digit = lehmer[next_digit++];
    if (digit >= unused.size()) throw std::invalid_argument("assign_positions: digit out of range");
    positions[i] = unused[digit];
    unused.erase(unused.begin() + digit);
  }
  return positions;
}

namespace {

class SlotScheme final : public Scheme {
 public:
  SlotScheme(std::size_t n_files, std::size_t n_users, const Rational& memory) {
    if (n_files == 0 || n_users == 0) throw std::invalid_argument("slot scheme: N, K >= 1");
    const auto n = static_cast<std::int64_t>(n_files);
    if (memory < Rational(0) || memory > Rational(n)) throw std::invalid_argument("slot scheme: M must lie in [0, N]");
    const Rational fraction = memory / n;
    params_.name = "thm1:" + std::to_string(n_files) + "," + std::to_string(n_users) + "," +
                   to_string(memory);
    params_.n_files = n_files;
    params_.n_users = n_users;
    params_.subpacketization = static_cast<std::size_t>(fraction.denominator());
    params_.memory = memory;
    params_.rate = static_cast<std::int64_t>(std::min(n_files, n_users)) * (Rational(1) - fraction);
    cached_ = static_cast<std::size_t>(fraction.numerator());
    many_files_ = n_files > n_users;
    slot_bits_ = bits_for_alphabet(n_users);
  }

  const SchemeParams& params() const override { return params_; }
  PrivacyClass privacy() const override { return PrivacyClass::kPrivate; }
  std::uint64_t key_alphabet() const override { return many_files_ ? params_.n_users : 1; }

  RandomnessSpace randomness(std::size_t width) const override {
    RandomnessSpace space;
    if (!many_files_) return space;
    const std::size_t k = params_.n_users;
    for (std::size_t m = 0; m < k; ++m) space.radices.push_back(static_cast<std::uint32_t>(k - m));
    const std::size_t filler = k * uncached_subfiles() * width;
    space.radices.insert(space.radices.end(), filler, 2);
    return space;
  }

  std::size_t header_bits() const override { return many_files_ ? params_.n_users * slot_bits_ : 0; }

  CacheContent place(std::size_t /*user*/, Key key, const FileStore& files) const override {
    const std::size_t split = cached_ * files.width();
    BitVector coded;
    for (std::size_t i = 0; i < files.n_files(); ++i) coded.append(files.file(i).slice(0, split));
    return {std::move(coded), key};
  }

  DeliveryMessage deliver(const FileStore& files, const DemandVector& demands,
                          std::span<const Key> keys,
                          const PrivateRandomness& randomness) const override {
    validate_demands(demands, params_.n_files, params_.n_users);
    const std::size_t split = cached_ * files.width();
    const std::size_t slot = files.file_bits() - split;
    DeliveryMessage m;
    if (!many_files_) {
      for (std::size_t i = 0; i < files.n_files(); ++i) m.payload.append(files.file(i).slice(split, slot));
      return m;
    }

    const std::size_t k = params_.n_users;
    if (keys.size() != k) throw std::invalid_argument("slot scheme: one key per user");
    if (randomness.size() != k + k * slot) throw std::invalid_argument("slot scheme: randomness size");
    const std::vector<std::uint32_t> lehmer(randomness.begin(), randomness.begin() + static_cast<std::ptrdiff_t>(k));
    const auto positions = assign_positions(demands, lehmer, k);

    for (std::size_t j = 0; j < k; ++j) {
      const auto owner = std::find(positions.begin(), positions.end(), j);
      if (owner != positions.end()) {
        const auto user = static_cast<std::size_t>(owner - positions.begin());
        m.payload.append(files.file(demands[user]).slice(split, slot));
      } else {
        for (std::size_t b = 0; b < slot; ++b) m.payload.append_uint(randomness[k + j * slot + b], 1);
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (keys[i] >= k) throw std::invalid_argument("slot scheme: key out of range");
      m.header.append_uint((positions[i] + keys[i]) % k, slot_bits_);
    }
    return m;
  }

  BitVector decode(std::size_t user, FileIndex demand, Key key, const DeliveryMessage& message,
                   const CacheContent& cache) const override {
    const std::size_t cached_bits = cache.coded.size() / params_.n_files;
    BitVector out = cache.coded.slice(demand * cached_bits, cached_bits);
    if (!many_files_) {
      const std::size_t slot = message.payload.size() / params_.n_files;
      out.append(message.payload.slice(demand * slot, slot));
      return out;
    }
    const std::size_t k = params_.n_users;
    const std::size_t slot = message.payload.size() / k;
    const std::uint64_t j = message.header.read_uint(user * slot_bits_, slot_bits_);
    const std::uint64_t position = (j + k - key % k) % k;
    out.append(message.payload.slice(position * slot, slot));
    return out;
  }

 private:
  std::size_t uncached_subfiles() const { return params_.subpacketization - cached_; }

  SchemeParams params_;
  std::size_t cached_ = 0;
  bool many_files_ = false;
  std::size_t slot_bits_ = 0;
};

class LiftedScheme final : public Scheme {
 public:
  LiftedScheme(SchemePtr inner, std::size_t n_files, std::size_t n_users, std::string name = {})
      : inner_(std::move(inner)) {
    const auto& p = inner_->params();
    if (p.n_files != n_files || p.n_users != n_files * n_users) {
      throw std::invalid_argument("lift_private: inner scheme must have N files and N*K users");
    }
    if (inner_->privacy() == PrivacyClass::kPrivate) {
      throw std::invalid_argument("lift_private: inner scheme must be non-private");
    }
    for (const auto& d : restricted_demand_set(n_files, n_users).members) {
      if (!inner_->serves(d)) throw std::invalid_argument("lift_private: inner scheme does not cover D_RS");
    }
    params_ = p;
    params_.n_users = n_users;
    params_.name = name.empty() ? "lift:" + p.name : std::move(name);
    shift_bits_ = bits_for_alphabet(n_files);
  }

  const SchemeParams& params() const override { return params_; }
  PrivacyClass privacy() const override { return PrivacyClass::kPrivate; }
  std::uint64_t key_alphabet() const override { return params_.n_files; }
  RandomnessSpace randomness(std::size_t width) const override { return inner_->randomness(width); }
  std::size_t header_bits() const override { return params_.n_users * shift_bits_; }

  CacheContent place(std::size_t user, Key key, const FileStore& files) const override {
    if (key >= params_.n_files) throw std::invalid_argument("lift: key out of range");
    CacheContent c = inner_->place(user * params_.n_files + key, 0, files);
    c.key = key;
    return c;
  }

  DeliveryMessage deliver(const FileStore& files, const DemandVector& demands,
                          std::span<const Key> keys,
                          const PrivateRandomness& randomness) const override {
    validate_demands(demands, params_.n_files, params_.n_users);
    const KeyAssignment key_vec(keys.begin(), keys.end());
    const auto shifts = mod_sub_vec(key_vec, demands, params_.n_files);
    const auto expanded = expand_shifts(shifts, params_.n_files);
    const std::vector<Key> inner_keys(expanded.size(), 0);
    DeliveryMessage m = inner_->deliver(files, expanded, inner_keys, randomness);
    m.header = BitVector();
    for (auto s : shifts) m.header.append_uint(s, shift_bits_);
    return m;
  }

  BitVector decode(std::size_t user, FileIndex /*demand*/, Key key, const DeliveryMessage& message,
                   const CacheContent& cache) const override {
    std::vector<FileIndex> shifts(params_.n_users);
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      shifts[i] = static_cast<FileIndex>(message.header.read_uint(i * shift_bits_, shift_bits_));
    }
    const auto expanded = expand_shifts(shifts, params_.n_files);
    const std::size_t virtual_user = user * params_.n_files + key;
    const DeliveryMessage inner_msg{message.payload, inner_->demand_header(expanded)};
    return inner_->decode(virtual_user, expanded.at(virtual_user), 0, inner_msg, cache);
  }

 private:
  SchemePtr inner_;
  SchemeParams params_;
  std::size_t shift_bits_ = 0;
};

}  // namespace

SchemePtr theorem1_scheme(std::size_t n_files, std::size_t n_users, const Rational& memory) {
  return std::make_shared<SlotScheme>(n_files, n_users, memory);
}

SchemePtr lift_private(SchemePtr non_private, std::size_t n_files, std::size_t n_users) {
  if (!non_private) throw std::invalid_argument("lift_private: null scheme");
  return std::make_shared<LiftedScheme>(std::move(non_private), n_files, n_users);
}

SchemePtr example1_scheme() {
  return std::make_shared<LiftedScheme>(tian_2x4_scheme(), 2, 2, "example1");
}

SchemePtr dual_example_scheme() {
  return std::make_shared<LiftedScheme>(dual_corner_scheme(), 2, 2, "dual");
}

}  // namespace cachepriv
