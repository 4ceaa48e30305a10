#include "cachepriv/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

namespace cachepriv {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::string count_to_string(std::uint64_t n) {
  return n == kSaturated ? std::string(">= 2^64") : std::to_string(n);
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

template <class T>
std::vector<std::uint64_t> widen(const std::vector<T>& v) {
  return {v.begin(), v.end()};
}

void check_budget(const AtomSpace& space, const VerifyOptions& options) {
  if (space.total > options.budget) throw BudgetExceeded(space.total, options.budget);
  if (space.total > 1 && std::gcd(options.order_stride, space.total) != 1) {
    throw std::invalid_argument("order_stride must be coprime with the atom count " +
                                std::to_string(space.total));
  }
}

FileStore files_of(const Scheme& s, const AtomSpace& space, std::uint64_t bits) {
  return FileStore::from_index(s.params().n_files, s.params().subpacketization, space.width, bits);
}

/// Runs `visit(partial, atom_index)` over all atoms in `workers` contiguous
/// ranges of visiting positions and returns the per-worker partials.
template <class Partial, class Make, class Visit>
std::vector<Partial> run_partitioned(const AtomSpace& space, const VerifyOptions& options, Make make,
                                     Visit visit) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::uint64_t>(options.workers, std::max<std::uint64_t>(space.total, 1)));
  std::vector<Partial> partials;
  partials.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) partials.push_back(make());
  const std::uint64_t total = space.total;
  const std::uint64_t stride = total <= 1 ? 1 : options.order_stride % total;
  auto body = [&](std::size_t w) {
    const std::uint64_t lo = total / workers * w + std::min<std::uint64_t>(w, total % workers);
    const std::uint64_t hi = lo + total / workers + (w < total % workers ? 1 : 0);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const auto index = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(i) * stride) % total);
      visit(partials[w], index);
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(body, w);
    for (auto& t : threads) t.join();
  }
  return partials;
}

std::uint64_t rest_rank(const DemandVector& d, std::size_t user, std::size_t n_files) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i != user) r = r * n_files + d[i];
  }
  return r;
}

void append_block(std::string& out, const BitVector& bits) {
  const auto n = static_cast<std::uint32_t>(bits.size());
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((n >> (8 * b)) & 0xFF));
  for (auto byte : bits.to_bytes()) out.push_back(static_cast<char>(byte));
}

void append_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::string hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (unsigned char c : bytes) {
    s.push_back(kDigits[c >> 4]);
    s.push_back(kDigits[c & 15]);
  }
  return s;
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("enumeration needs " + count_to_string(required) + " atoms, budget is " +
                         std::to_string(budget)),
      required_(required),
      budget_(budget) {}

VerifyOptions default_options() {
  VerifyOptions o;
  if (const char* env = std::getenv("CACHEPRIV_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') o.budget = v;
  }
  return o;
}

AtomSpace AtomSpace::of(const Scheme& s, std::size_t width) {
  AtomSpace a;
  a.width = width;
  const std::size_t bits = s.params().n_files * s.file_bits(width);
  a.file_count = bits >= 64 ? kSaturated : (std::uint64_t{1} << bits);
  a.demands = s.served_demands();
  a.key_count = ipow(s.key_alphabet(), s.params().n_users);
  a.randomness = s.randomness(width);
  a.randomness_count = a.randomness.cardinality();
  a.total = saturating_mul(saturating_mul(a.file_count, a.demands.size()),
                           saturating_mul(a.key_count, a.randomness_count));
  return a;
}

Atom atom_at(const Scheme& s, const AtomSpace& space, std::uint64_t index) {
  Atom a;
  const std::uint64_t p = index % space.randomness_count;
  index /= space.randomness_count;
  std::uint64_t k = index % space.key_count;
  index /= space.key_count;
  a.demand_index = static_cast<std::size_t>(index % space.demands.size());
  a.files = index / space.demands.size();
  a.randomness = space.randomness.unrank(p);
  const std::uint64_t alphabet = s.key_alphabet();
  a.keys.resize(s.params().n_users);
  for (auto& key : a.keys) {
    key = k % alphabet;
    k /= alphabet;
  }
  return a;
}

std::string describe(const Scheme& s, const AtomSpace& space, const Atom& atom) {
  const auto files = files_of(s, space, atom.files);
  std::string w;
  for (std::size_t i = 0; i < files.n_files(); ++i) w += (i ? "|" : "") + files.file(i).to_string();
  return "W=" + w + " D=(" + join(widen(space.demands[atom.demand_index])) + ") S=(" +
         join(atom.keys) + ") P=(" + join(widen(atom.randomness)) + ")";
}

std::string serialize_view(const CacheContent& cache, const DeliveryMessage& message,
                           FileIndex own_demand) {
  std::string out;
  append_block(out, cache.coded);
  append_u64(out, cache.key);
  append_block(out, message.header);
  append_block(out, message.payload);
  append_u64(out, own_demand);
  return out;
}

void JointDistribution::add(const std::string& observation, std::size_t rest, std::uint64_t atom_index) {
  auto [it, inserted] = cells.try_emplace(observation, std::vector<std::uint64_t>(rest_values, 0));
  it->second[rest] += 1;
  if (inserted) {
    witness.emplace(observation, atom_index);
  } else {
    auto& w = witness[observation];
    w = std::min(w, atom_index);
  }
  rest_marginal[rest] += 1;
  total += 1;
}

void JointDistribution::merge(const JointDistribution& other) {
  for (const auto& [obs, counts] : other.cells) {
    auto [it, inserted] = cells.try_emplace(obs, std::vector<std::uint64_t>(rest_values, 0));
    for (std::size_t r = 0; r < rest_values; ++r) it->second[r] += counts[r];
    const auto w = other.witness.at(obs);
    auto [wit, winserted] = witness.try_emplace(obs, w);
    if (!winserted) wit->second = std::min(wit->second, w);
  }
  for (std::size_t r = 0; r < rest_values; ++r) rest_marginal[r] += other.rest_marginal[r];
  total += other.total;
}

std::optional<std::pair<std::string, std::size_t>> JointDistribution::first_violation() const {
  std::vector<const std::string*> keys;
  keys.reserve(cells.size());
  for (const auto& [obs, _] : cells) keys.push_back(&obs);
  std::sort(keys.begin(), keys.end(), [](const auto* a, const auto* b) { return *a < *b; });
  for (const auto* obs : keys) {
    const auto& counts = cells.at(*obs);
    const std::uint64_t obs_total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    for (std::size_t r = 0; r < rest_values; ++r) {
      const auto lhs = static_cast<unsigned __int128>(counts[r]) * total;
      const auto rhs = static_cast<unsigned __int128>(rest_marginal[r]) * obs_total;
      if (lhs != rhs) return std::make_pair(*obs, r);
    }
  }
  return std::nullopt;
}

double JointDistribution::mutual_information_bits() const {
  if (total == 0) return 0.0;
  const double t = static_cast<double>(total);
  double mi = 0.0;
  for (const auto& [obs, counts] : cells) {
    const double obs_total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    for (std::size_t r = 0; r < rest_values; ++r) {
      if (counts[r] == 0) continue;
      const double c = static_cast<double>(counts[r]);
      mi += c / t * std::log2(c * t / (static_cast<double>(rest_marginal[r]) * obs_total));
    }
  }
  return std::max(mi, 0.0);
}

JointDistribution privacy_table(const Scheme& s, std::size_t user, const VerifyOptions& options) {
  if (s.privacy() != PrivacyClass::kPrivate) {
    throw std::invalid_argument("privacy check requires a private scheme, '" + s.params().name +
                                "' is " + to_string(s.privacy()));
  }
  const auto& p = s.params();
  if (user >= p.n_users) throw std::invalid_argument("user index out of range");
  const AtomSpace space = AtomSpace::of(s, options.width);
  check_budget(space, options);

  auto make = [&] {
    JointDistribution j;
    j.user = user;
    j.rest_values = static_cast<std::size_t>(ipow(p.n_files, p.n_users - 1));
    j.rest_marginal.assign(j.rest_values, 0);
    return j;
  };
  auto partials = run_partitioned<JointDistribution>(space, options, make, [&](JointDistribution& j, std::uint64_t index) {
    const Atom atom = atom_at(s, space, index);
    const auto files = files_of(s, space, atom.files);
    const auto& d = space.demands[atom.demand_index];
    const auto cache = s.place(user, atom.keys[user], files);
    const auto message = s.deliver(files, d, atom.keys, atom.randomness);
    j.add(serialize_view(cache, message, d[user]), rest_rank(d, user, p.n_files), index);
  });
  JointDistribution joint = make();
  for (const auto& part : partials) joint.merge(part);
  return joint;
}

Verdict check_decodability(const Scheme& s, const VerifyOptions& options) {
  const AtomSpace space = AtomSpace::of(s, options.width);
  check_budget(space, options);
  const std::size_t n_users = s.params().n_users;

  struct Partial {
    std::uint64_t cases = 0;
    std::optional<std::uint64_t> failing_atom;
    std::size_t failing_user = 0;
  };
  auto partials = run_partitioned<Partial>(space, options, [] { return Partial{}; }, [&](Partial& part, std::uint64_t index) {
    const Atom atom = atom_at(s, space, index);
    const auto files = files_of(s, space, atom.files);
    const auto& d = space.demands[atom.demand_index];
    const auto message = s.deliver(files, d, atom.keys, atom.randomness);
    for (std::size_t k = 0; k < n_users; ++k) {
      ++part.cases;
      const auto cache = s.place(k, atom.keys[k], files);
      if (s.decode(k, d[k], atom.keys[k], message, cache) != files.file(d[k])) {
        if (!part.failing_atom || index < *part.failing_atom) {
          part.failing_atom = index;
          part.failing_user = k;
        }
      }
    }
  });

  Verdict v;
  v.check = "decodability";
  v.atoms = space.total;
  std::optional<std::uint64_t> worst;
  std::size_t user = 0;
  for (const auto& part : partials) {
    v.cases += part.cases;
    if (part.failing_atom && (!worst || *part.failing_atom < *worst)) {
      worst = part.failing_atom;
      user = part.failing_user;
    }
  }
  if (worst) {
    v.fail(describe(s, space, atom_at(s, space, *worst)) + " user " + std::to_string(user) +
           " decodes the wrong bits");
  }
  return v;
}

Verdict check_privacy(const Scheme& s, std::size_t user, const VerifyOptions& options) {
  const JointDistribution joint = privacy_table(s, user, options);
  Verdict v;
  v.check = "privacy(user=" + std::to_string(user) + ")";
  v.atoms = joint.total;
  v.cases = joint.cells.size() * joint.rest_values;
  v.mutual_information_bits = joint.mutual_information_bits();
  if (auto bad = joint.first_violation()) {
    const AtomSpace space = AtomSpace::of(s, options.width);
    const auto& counts = joint.cells.at(bad->first);
    v.fail("observation " + hex(bad->first) + " (first seen at " +
           describe(s, space, atom_at(s, space, joint.witness.at(bad->first))) + ") has counts (" +
           join(counts) + ") over D_-k, not proportional to the D_-k marginal; cell D_-k rank " +
           std::to_string(bad->second));
  }
  return v;
}

Verdict check_lemma1(const Scheme& s, const VerifyOptions& options) {
  const auto& p = s.params();
  if (p.n_files != 2 || p.n_users != 2 || s.privacy() != PrivacyClass::kPrivate) {
    throw std::invalid_argument("conditional-law check needs a private N = K = 2 scheme");
  }
  const AtomSpace space = AtomSpace::of(s, options.width);
  check_budget(space, options);

  // tables[2*k + j][obs][i]: count of (X, Z_k, W_j) given D_k = j, D_{1-k} = i.
  using Table = std::unordered_map<std::string, std::array<std::uint64_t, 2>>;
  using Partial = std::array<Table, 4>;
  auto partials = run_partitioned<Partial>(space, options, [] { return Partial{}; }, [&](Partial& part, std::uint64_t index) {
    const Atom atom = atom_at(s, space, index);
    const auto files = files_of(s, space, atom.files);
    const auto& d = space.demands[atom.demand_index];
    const auto message = s.deliver(files, d, atom.keys, atom.randomness);
    for (std::size_t k = 0; k < 2; ++k) {
      const FileIndex j = d[k];
      const auto cache = s.place(k, atom.keys[k], files);
      std::string obs;
      append_block(obs, message.header);
      append_block(obs, message.payload);
      append_block(obs, cache.coded);
      append_u64(obs, cache.key);
      append_block(obs, files.file(j));
      part[2 * k + j][obs][d[1 - k]] += 1;
    }
  });
  std::array<Table, 4> tables;
  for (const auto& part : partials) {
    for (std::size_t t = 0; t < 4; ++t) {
      for (const auto& [obs, c] : part[t]) {
        auto& dst = tables[t][obs];
        dst[0] += c[0];
        dst[1] += c[1];
      }
    }
  }

  Verdict v;
  v.check = "lemma1";
  v.atoms = space.total;
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& table = tables[2 * k + j];
      std::array<std::uint64_t, 2> totals{0, 0};
      for (const auto& [obs, c] : table) {
        totals[0] += c[0];
        totals[1] += c[1];
      }
      const std::uint64_t all = totals[0] + totals[1];
      std::vector<const std::string*> keys;
      for (const auto& [obs, _] : table) keys.push_back(&obs);
      std::sort(keys.begin(), keys.end(), [](const auto* a, const auto* b) { return *a < *b; });
      for (const auto* obs : keys) {
        const auto& c = table.at(*obs);
        const std::uint64_t marginal = c[0] + c[1];
        for (std::size_t i = 0; i < 2; ++i) {
          ++v.cases;
          // P(o | D_k=j, D_{1-k}=i) == P(o | D_k=j), cross-multiplied.
          const auto lhs = static_cast<unsigned __int128>(c[i]) * all;
          const auto rhs = static_cast<unsigned __int128>(marginal) * totals[i];
          if (lhs != rhs) {
            v.fail("user " + std::to_string(k) + ", j=" + std::to_string(j) + ": (X, Z_k, W_j) = " +
                   hex(*obs) + " has counts (" + std::to_string(c[0]) + ", " + std::to_string(c[1]) +
                   ") for D_{1-k} = (0, 1)");
          }
        }
      }
    }
  }
  return v;
}

RateMeasurement measure_rates(const Scheme& s, std::size_t width) {
  const auto& p = s.params();
  const FileStore files(p.n_files, p.subpacketization, width);
  const auto demands = s.served_demands();
  const KeyAssignment keys(p.n_users, 0);
  const PrivateRandomness randomness(s.randomness(width).radices.size(), 0);
  const auto cache = s.place(0, 0, files);
  const auto message = s.deliver(files, demands.front(), keys, randomness);
  const auto f = static_cast<std::int64_t>(files.file_bits());
  return {Rational(static_cast<std::int64_t>(cache.coded.size()), f),
          Rational(static_cast<std::int64_t>(message.payload.size()), f), message.header.size()};
}

std::vector<Verdict> verify_all(const Scheme& s, const VerifyOptions& options) {
  std::vector<Verdict> out;
  out.push_back(check_decodability(s, options));
  if (s.privacy() == PrivacyClass::kPrivate) {
    for (std::size_t k = 0; k < s.params().n_users; ++k) out.push_back(check_privacy(s, k, options));
    if (s.params().n_files == 2 && s.params().n_users == 2) out.push_back(check_lemma1(s, options));
  }
  return out;
}

}  // namespace cachepriv
