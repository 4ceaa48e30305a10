#include "cachepriv/schemes.hpp"

#include <numeric>
#include <stdexcept>

#include "cachepriv/witness.hpp"

namespace cachepriv {
namespace {

class BaselineScheme final : public Scheme {
 public:
  BaselineScheme(std::size_t n_files, std::size_t n_users, const Rational& memory) {
    if (n_files == 0 || n_users == 0) throw std::invalid_argument("baseline: N, K >= 1");
    const auto n = static_cast<std::int64_t>(n_files);
    if (memory < Rational(0) || memory > Rational(n)) throw std::invalid_argument("baseline: M must lie in [0, N]");
    const Rational fraction = memory / n;
    params_.name = "baseline:" + std::to_string(n_files) + "," + std::to_string(n_users) + "," +
                   to_string(memory);
    params_.n_files = n_files;
    params_.n_users = n_users;
    params_.subpacketization = static_cast<std::size_t>(fraction.denominator());
    params_.memory = memory;
    params_.rate = n - memory;
    cached_ = static_cast<std::size_t>(fraction.numerator());
  }

  const SchemeParams& params() const override { return params_; }
  PrivacyClass privacy() const override { return PrivacyClass::kNonPrivate; }
  std::size_t header_bits() const override { return 0; }
  BitVector demand_header(const DemandVector&) const override { return {}; }

  CacheContent place(std::size_t /*user*/, Key key, const FileStore& files) const override {
    const std::size_t split = cached_ * files.width();
    BitVector coded;
    for (std::size_t i = 0; i < files.n_files(); ++i) coded.append(files.file(i).slice(0, split));
    return {std::move(coded), key};
  }

  DeliveryMessage deliver(const FileStore& files, const DemandVector& demands,
                          std::span<const Key>, const PrivateRandomness&) const override {
    validate_demands(demands, params_.n_files, params_.n_users);
    const std::size_t split = cached_ * files.width();
    BitVector payload;
    for (std::size_t i = 0; i < files.n_files(); ++i) {
      payload.append(files.file(i).slice(split, files.file_bits() - split));
    }
    return {std::move(payload), {}};
  }

  BitVector decode(std::size_t /*user*/, FileIndex demand, Key, const DeliveryMessage& message,
                   const CacheContent& cache) const override {
    const std::size_t cached_bits = cache.coded.size() / params_.n_files;
    const std::size_t uncached_bits = message.payload.size() / params_.n_files;
    BitVector out = cache.coded.slice(demand * cached_bits, cached_bits);
    out.append(message.payload.slice(demand * uncached_bits, uncached_bits));
    return out;
  }

 private:
  SchemeParams params_;
  std::size_t cached_ = 0;
};

class SharedScheme final : public Scheme {
 public:
  SharedScheme(SchemePtr a, SchemePtr b, const Rational& lambda)
      : a_(std::move(a)), b_(std::move(b)) {
    const auto& pa = a_->params();
    const auto& pb = b_->params();
    // x*t_a*(q-p) = y*t_b*p with x, y minimal.
    const auto p = lambda.numerator();
    const auto q = lambda.denominator();
    const auto ta = static_cast<std::int64_t>(pa.subpacketization);
    const auto tb = static_cast<std::int64_t>(pb.subpacketization);
    const std::int64_t lhs = ta * (q - p);
    const std::int64_t rhs = tb * p;
    const std::int64_t g = std::gcd(lhs, rhs);
    a_scale_ = static_cast<std::size_t>(rhs / g);
    b_scale_ = static_cast<std::size_t>(lhs / g);
    a_subfiles_ = a_scale_ * pa.subpacketization;
    b_subfiles_ = b_scale_ * pb.subpacketization;

    params_.name = "share:" + to_string(lambda) + ":" + pa.name + ":" + pb.name;
    params_.n_files = pa.n_files;
    params_.n_users = pa.n_users;
    params_.subpacketization = a_subfiles_ + b_subfiles_;
    params_.memory = lambda * pa.memory + (Rational(1) - lambda) * pb.memory;
    params_.rate = lambda * pa.rate + (Rational(1) - lambda) * pb.rate;
  }

  const SchemeParams& params() const override { return params_; }
  PrivacyClass privacy() const override { return a_->privacy(); }
  std::uint64_t key_alphabet() const override {
    return saturating_mul(a_->key_alphabet(), b_->key_alphabet());
  }
  RandomnessSpace randomness(std::size_t width) const override {
    RandomnessSpace space = a_->randomness(a_scale_ * width);
    const auto tail = b_->randomness(b_scale_ * width).radices;
    space.radices.insert(space.radices.end(), tail.begin(), tail.end());
    return space;
  }
  std::size_t header_bits() const override { return a_->header_bits() + b_->header_bits(); }
  std::vector<DemandVector> served_demands() const override { return a_->served_demands(); }
  bool serves(const DemandVector& d) const override { return a_->serves(d); }

  BitVector demand_header(const DemandVector& demands) const override {
    BitVector h = a_->demand_header(demands);
    h.append(b_->demand_header(demands));
    return h;
  }

  CacheContent place(std::size_t user, Key key, const FileStore& files) const override {
    const auto [fa, fb] = split(files);
    const auto [ka, kb] = split_key(key);
    CacheContent ca = a_->place(user, ka, fa);
    ca.coded.append(b_->place(user, kb, fb).coded);
    ca.key = key;
    return ca;
  }

  DeliveryMessage deliver(const FileStore& files, const DemandVector& demands,
                          std::span<const Key> keys,
                          const PrivateRandomness& randomness) const override {
    const auto [fa, fb] = split(files);
    std::vector<Key> keys_a;
    std::vector<Key> keys_b;
    for (auto k : keys) {
      const auto [ka, kb] = split_key(k);
      keys_a.push_back(ka);
      keys_b.push_back(kb);
    }
    const std::size_t na = a_->randomness(fa.width()).radices.size();
    if (randomness.size() < na) throw std::invalid_argument("memory_share: randomness too short");
    const PrivateRandomness ra(randomness.begin(), randomness.begin() + static_cast<std::ptrdiff_t>(na));
    const PrivateRandomness rb(randomness.begin() + static_cast<std::ptrdiff_t>(na), randomness.end());
    DeliveryMessage m = a_->deliver(fa, demands, keys_a, ra);
    DeliveryMessage mb = b_->deliver(fb, demands, keys_b, rb);
    m.payload.append(mb.payload);
    m.header.append(mb.header);
    return m;
  }

  BitVector decode(std::size_t user, FileIndex demand, Key key, const DeliveryMessage& message,
                   const CacheContent& cache) const override {
    const std::size_t width = cache_bits_width(cache, message);
    const auto [ka, kb] = split_key(key);
    const std::size_t ca = a_->cache_bits(a_scale_ * width);
    const std::size_t pa = a_->payload_bits(a_scale_ * width);
    const std::size_t ha = a_->header_bits();
    const CacheContent cache_a{cache.coded.slice(0, ca), ka};
    const CacheContent cache_b{cache.coded.slice(ca, cache.coded.size() - ca), kb};
    const DeliveryMessage msg_a{message.payload.slice(0, pa), message.header.slice(0, ha)};
    const DeliveryMessage msg_b{message.payload.slice(pa, message.payload.size() - pa),
                                message.header.slice(ha, message.header.size() - ha)};
    BitVector out = a_->decode(user, demand, ka, msg_a, cache_a);
    out.append(b_->decode(user, demand, kb, msg_b, cache_b));
    return out;
  }

 private:
  std::pair<FileStore, FileStore> split(const FileStore& files) const {
    if (files.subpacketization() != params_.subpacketization) {
      throw std::invalid_argument("memory_share: file store has wrong subpacketization");
    }
    const std::size_t w = files.width();
    std::vector<BitVector> head;
    std::vector<BitVector> tail;
    for (std::size_t i = 0; i < files.n_files(); ++i) {
      head.push_back(files.file(i).slice(0, a_subfiles_ * w));
      tail.push_back(files.file(i).slice(a_subfiles_ * w, b_subfiles_ * w));
    }
    return {FileStore::from_files(std::move(head), a_->params().subpacketization, a_scale_ * w),
            FileStore::from_files(std::move(tail), b_->params().subpacketization, b_scale_ * w)};
  }

  std::pair<Key, Key> split_key(Key key) const {
    const auto na = a_->key_alphabet();
    return {key % na, key / na};
  }

  // Cache and payload sizes are (M*t)*width and (R*t)*width bits, with
  // M*t and R*t integral.
  std::size_t cache_bits_width(const CacheContent& cache, const DeliveryMessage& message) const {
    const auto t = static_cast<std::int64_t>(params_.subpacketization);
    const Rational cache_symbols = params_.memory * t;
    const Rational payload_symbols = params_.rate * t;
    if (cache_symbols > Rational(0)) {
      return cache.coded.size() / static_cast<std::size_t>(cache_symbols.numerator());
    }
    if (payload_symbols > Rational(0)) {
      return message.payload.size() / static_cast<std::size_t>(payload_symbols.numerator());
    }
    return 0;
  }

  SchemePtr a_;
  SchemePtr b_;
  SchemeParams params_;
  std::size_t a_scale_ = 1;
  std::size_t b_scale_ = 1;
  std::size_t a_subfiles_ = 0;
  std::size_t b_subfiles_ = 0;
};

class PlaintextHeaderScheme final : public Scheme {
 public:
  explicit PlaintextHeaderScheme(SchemePtr inner) : inner_(std::move(inner)) {
    params_ = inner_->params();
    params_.name = "plaintext-header:" + params_.name;
    demand_bits_ = params_.n_users * bits_for_alphabet(params_.n_files);
  }

  const SchemeParams& params() const override { return params_; }
  PrivacyClass privacy() const override { return PrivacyClass::kPrivate; }
  std::uint64_t key_alphabet() const override { return inner_->key_alphabet(); }
  RandomnessSpace randomness(std::size_t width) const override { return inner_->randomness(width); }
  std::size_t header_bits() const override { return inner_->header_bits() + demand_bits_; }

  CacheContent place(std::size_t user, Key key, const FileStore& files) const override {
    return inner_->place(user, key, files);
  }

  DeliveryMessage deliver(const FileStore& files, const DemandVector& demands,
                          std::span<const Key> keys,
                          const PrivateRandomness& randomness) const override {
    DeliveryMessage m = inner_->deliver(files, demands, keys, randomness);
    const std::size_t per = bits_for_alphabet(params_.n_files);
    for (auto d : demands) m.header.append_uint(d, per);
    return m;
  }

  BitVector decode(std::size_t user, FileIndex demand, Key key, const DeliveryMessage& message,
                   const CacheContent& cache) const override {
    const DeliveryMessage inner_msg{message.payload,
                                    message.header.slice(0, inner_->header_bits())};
    return inner_->decode(user, demand, key, inner_msg, cache);
  }

 private:
  SchemePtr inner_;
  SchemeParams params_;
  std::size_t demand_bits_ = 0;
};

}  // namespace

SchemePtr baseline_uncoded(std::size_t n_files, std::size_t n_users, const Rational& memory) {
  return std::make_shared<BaselineScheme>(n_files, n_users, memory);
}

SchemePtr tian_2x4_scheme() { return compile_linear(tian_2x4_matrices(), "tian_2x4"); }

SchemePtr dual_corner_scheme() { return compile_linear(dual_corner_matrices(), "dual_corner"); }

SchemePtr memory_share(SchemePtr a, SchemePtr b, const Rational& lambda) {
  if (!a || !b) throw std::invalid_argument("memory_share: null scheme");
  const auto& pa = a->params();
  const auto& pb = b->params();
  if (pa.n_files != pb.n_files || pa.n_users != pb.n_users) {
    throw std::invalid_argument("memory_share: schemes differ in (N, K)");
  }
  if (a->privacy() != b->privacy()) {
    throw std::invalid_argument("memory_share: schemes differ in privacy class");
  }
  if (a->privacy() == PrivacyClass::kSubsetNonPrivate &&
      a->served_demands() != b->served_demands()) {
    throw std::invalid_argument("memory_share: schemes serve different demand sets");
  }
  if (lambda < Rational(0) || lambda > Rational(1)) throw std::invalid_argument("memory_share: lambda must lie in [0, 1]");
  if (lambda == Rational(1)) return a;
  if (lambda == Rational(0)) return b;
  return std::make_shared<SharedScheme>(std::move(a), std::move(b), lambda);
}

SchemePtr with_plaintext_demand_header(SchemePtr inner) {
  return std::make_shared<PlaintextHeaderScheme>(std::move(inner));
}

}  // namespace cachepriv
