#include "cachepriv/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace cachepriv {
namespace {

constexpr std::size_t kMaxCandidates = 1U << 16;
constexpr std::size_t kDrawsPerUser = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
  return splitmix64(seed ^ splitmix64(restart));
}

/// Number of k-dimensional subspaces of GF(2)^n, saturating.
double subspace_count(std::size_t k, std::size_t n) {
  double num = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    num *= (std::ldexp(1.0, static_cast<int>(n - i)) - 1.0) /
           (std::ldexp(1.0, static_cast<int>(k - i)) - 1.0);
  }
  return num;
}

std::vector<gf2::Matrix> candidates_if_small(std::size_t k, std::size_t n) {
  if (subspace_count(k, n) > kMaxCandidates) return {};
  return gf2::enumerate_subspaces(k, n);
}

bool decodes(const gf2::Basis& base, const gf2::Matrix& extra, FileIndex file, std::size_t t) {
  gf2::Basis b = base;
  for (auto r : extra.rows()) b.insert(r);
  for (std::size_t s = 0; s < t; ++s) {
    if (!b.contains(symbol_row(file, s, t))) return false;
  }
  return true;
}

gf2::Basis basis_of(const gf2::Matrix& m) {
  gf2::Basis b;
  for (auto r : m.rows()) b.insert(r);
  return b;
}

std::optional<gf2::Matrix> greedy_delivery(const std::vector<gf2::Matrix>& placement,
                                           const DemandVector& demand, std::size_t t,
                                           std::size_t tx_dim, std::size_t cols) {
  gf2::Matrix tx(cols);
  gf2::Basis tx_basis;
  for (std::size_t u = 0; u < placement.size(); ++u) {
    gf2::Basis b = basis_of(placement[u]);
    for (auto r : tx.rows()) b.insert(r);
    for (std::size_t s = 0; s < t; ++s) {
      const gf2::Row residual = b.reduce(symbol_row(demand[u], s, t));
      if (residual == 0) continue;
      if (tx.n_rows() == tx_dim) return std::nullopt;
      tx.push_row(residual);
      tx_basis.insert(residual);
      b.insert(residual);
    }
  }
  for (std::size_t c = 0; c < cols && tx.n_rows() < tx_dim; ++c) {
    if (tx_basis.insert(gf2::Row{1} << c)) tx.push_row(gf2::Row{1} << c);
  }
  return tx.rref();
}

std::vector<std::vector<std::size_t>> file_permutations(std::size_t n_files, std::size_t t) {
  std::vector<std::size_t> sigma(t);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> per_file;
  do {
    per_file.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> choice(n_files, 0);
  for (;;) {
    std::vector<std::size_t> perm(n_files * t);
    for (std::size_t f = 0; f < n_files; ++f) {
      for (std::size_t s = 0; s < t; ++s) perm[f * t + s] = f * t + per_file[choice[f]][s];
    }
    out.push_back(std::move(perm));
    std::size_t f = 0;
    while (f < n_files && ++choice[f] == per_file.size()) choice[f++] = 0;
    if (f == n_files) break;
  }
  return out;
}

gf2::Matrix canonical_under(const gf2::Matrix& placement,
                            const std::vector<std::vector<std::size_t>>& perms) {
  gf2::Matrix best = placement.rref();
  for (const auto& perm : perms) {
    gf2::Matrix m(placement.cols());
    for (auto r : placement.rows()) m.push_row(gf2::permute_columns(r, perm));
    m = m.rref();
    if (m.rows() < best.rows()) best = std::move(m);
  }
  return best;
}

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void and_with(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  std::size_t first() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return std::numeric_limits<std::size_t>::max();
  }
  static Bitset full(std::size_t n) {
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i);
    return b;
  }

 private:
  std::vector<std::uint64_t> words_;
};

class RandomRestartSearch {
 public:
  explicit RandomRestartSearch(const SearchRequest& req)
      : req_(req), cols_(req.n_files * req.subpacketization) {
    tx_candidates_ = candidates_if_small(req.tx_dim, cols_);
    perms_ = file_permutations(req.n_files, req.subpacketization);
    // Orbit representatives of the first user's placement, when enumerable.
    if (subspace_count(req.cache_dim, cols_) <= kMaxCandidates) {
      for (const auto& p : gf2::enumerate_subspaces(req.cache_dim, cols_)) {
        auto canon = canonical_under(p, perms_);
        if (std::find(reps_.begin(), reps_.end(), canon) == reps_.end()) reps_.push_back(std::move(canon));
      }
    }
  }

  std::optional<LinearSchemeMatrices> attempt(std::uint64_t restart) const {
    std::mt19937_64 rng(restart_seed(req_.seed, restart));
    LinearSchemeMatrices m = skeleton();
    if (!tx_candidates_.empty()) return attempt_pruned(rng, m);
    for (std::size_t u = 0; u < req_.n_users; ++u) m.placement.push_back(draw(u, rng));
    for (const auto& d : req_.demands.members) {
      auto tx = greedy_delivery(m.placement, d, req_.subpacketization, req_.tx_dim, cols_);
      if (!tx || tx->n_rows() != req_.tx_dim) return std::nullopt;
      m.delivery.push_back(std::move(*tx));
    }
    return m;
  }

  gf2::Matrix draw(std::size_t user, std::mt19937_64& rng) const {
    if (user == 0 && !reps_.empty()) return reps_[uniform_below(rng, reps_.size())];
    if (user == 0) return canonical_under(gf2::random_full_rank(req_.cache_dim, cols_, rng), perms_);
    return gf2::random_full_rank(req_.cache_dim, cols_, rng).rref();
  }

  // Users are placed one at a time; a draw is kept only if every demand still
  // has a candidate delivery serving all users placed so far.
  std::optional<LinearSchemeMatrices> attempt_pruned(std::mt19937_64& rng, LinearSchemeMatrices& m) const {
    const auto& demands = req_.demands.members;
    std::vector<std::vector<std::size_t>> alive(demands.size());
    for (auto& a : alive) {
      a.resize(tx_candidates_.size());
      std::iota(a.begin(), a.end(), std::size_t{0});
    }
    for (std::size_t u = 0; u < req_.n_users; ++u) {
      bool placed = false;
      for (std::size_t tries = 0; tries < kDrawsPerUser && !placed; ++tries) {
        gf2::Matrix p = draw(u, rng);
        const gf2::Basis base = basis_of(p);
        std::vector<std::vector<std::size_t>> next(demands.size());
        bool ok = true;
        for (std::size_t i = 0; i < demands.size() && ok; ++i) {
          for (auto c : alive[i]) {
            if (decodes(base, tx_candidates_[c], demands[i][u], req_.subpacketization)) next[i].push_back(c);
          }
          ok = !next[i].empty();
        }
        if (!ok) continue;
        alive = std::move(next);
        m.placement.push_back(std::move(p));
        placed = true;
      }
      if (!placed) return std::nullopt;
    }
    for (const auto& a : alive) m.delivery.push_back(tx_candidates_[a.front()]);
    return m;
  }

  LinearSchemeMatrices skeleton() const {
    LinearSchemeMatrices m;
    m.n_files = req_.n_files;
    m.n_users = req_.n_users;
    m.subpacketization = req_.subpacketization;
    m.cache_dim = req_.cache_dim;
    m.tx_dim = req_.tx_dim;
    m.demands = req_.demands;
    return m;
  }

 private:
  const SearchRequest& req_;
  std::size_t cols_;
  std::vector<gf2::Matrix> tx_candidates_;
  std::vector<std::vector<std::size_t>> perms_;
  std::vector<gf2::Matrix> reps_;
};

SearchResult run_random(const SearchRequest& req) {
  const RandomRestartSearch search(req);
  const std::size_t workers = std::max<std::size_t>(1, req.workers);
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<std::uint64_t> work{0};

  auto worker = [&](std::size_t w) {
    for (std::uint64_t r = w; r < req.budget && r < best.load(); r += workers) {
      work.fetch_add(1, std::memory_order_relaxed);
      if (search.attempt(r)) {
        std::uint64_t cur = best.load();
        while (r < cur && !best.compare_exchange_weak(cur, r)) {
        }
        return;
      }
    }
  };
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }

  SearchResult result;
  result.work = work.load();
  if (best.load() == std::numeric_limits<std::uint64_t>::max()) {
    result.budget_exhausted = true;
    return result;
  }
  result.witness_index = best.load();
  result.scheme = search.attempt(result.witness_index);
  return result;
}

SearchResult run_exhaustive(const SearchRequest& req) {
  const std::size_t cols = req.n_files * req.subpacketization;
  const std::size_t t = req.subpacketization;
  if (subspace_count(req.cache_dim, cols) > kMaxCandidates ||
      subspace_count(req.tx_dim, cols) > kMaxCandidates) {
    throw std::invalid_argument("exhaustive search: candidate space too large");
  }
  const auto placements = gf2::enumerate_subspaces(req.cache_dim, cols);
  const auto deliveries = gf2::enumerate_subspaces(req.tx_dim, cols);
  const std::size_t np = placements.size();
  const std::size_t nt = deliveries.size();
  const std::size_t nf = req.n_files;

  // ok_by_p[p * nf + f]: deliveries t with placement p + t decoding file f.
  std::vector<Bitset> ok_by_p(np * nf, Bitset(nt));
  std::vector<Bitset> ok_by_t(nt * nf, Bitset(np));
  for (std::size_t p = 0; p < np; ++p) {
    const auto base = basis_of(placements[p]);
    for (std::size_t d = 0; d < nt; ++d) {
      for (std::size_t f = 0; f < nf; ++f) {
        if (decodes(base, deliveries[d], static_cast<FileIndex>(f), t)) {
          ok_by_p[p * nf + f].set(d);
          ok_by_t[d * nf + f].set(p);
        }
      }
    }
  }

  const auto& demands = req.demands.members;
  const std::size_t n_users = req.n_users;
  const std::size_t n_demands = demands.size();

  // Placements first: the first user only ranges over orbit representatives.
  const auto perms = file_permutations(nf, t);
  std::vector<std::size_t> first_user;
  for (std::size_t p = 0; p < np; ++p) {
    if (canonical_under(placements[p], perms) == placements[p]) first_user.push_back(p);
  }
  const double cost_placements =
      static_cast<double>(first_user.size()) * std::pow(static_cast<double>(np), static_cast<double>(n_users - 1));
  const double cost_deliveries = std::pow(static_cast<double>(nt), static_cast<double>(n_demands));
  const bool placements_outer = cost_placements <= cost_deliveries;

  SearchResult result;
  const std::size_t outer_count = placements_outer ? n_users : n_demands;
  const std::size_t inner_count = placements_outer ? n_demands : n_users;
  std::vector<std::size_t> chosen(outer_count, 0);
  std::vector<std::vector<Bitset>> acc(outer_count + 1);
  acc[0].assign(inner_count, Bitset::full(placements_outer ? nt : np));
  bool found = false;

  // Depth-first search; acc[level][i] holds the candidates still open for inner item i.
  auto recurse = [&](auto&& self, std::size_t level) -> void {
    if (found || result.budget_exhausted) return;
    if (level == outer_count) {
      found = true;
      return;
    }
    std::vector<std::size_t> options;
    if (placements_outer && level == 0) {
      options = first_user;
    } else {
      options.resize(placements_outer ? np : nt);
      std::iota(options.begin(), options.end(), std::size_t{0});
    }
    for (auto c : options) {
      if (++result.work > req.budget) {
        result.budget_exhausted = true;
        return;
      }
      acc[level + 1] = acc[level];
      bool alive = true;
      for (std::size_t i = 0; i < inner_count && alive; ++i) {
        // Outer = user `level` with placement c, inner = demand i (and vice versa).
        const FileIndex f = placements_outer ? demands[i][level] : demands[level][i];
        acc[level + 1][i].and_with(placements_outer ? ok_by_p[c * nf + f] : ok_by_t[c * nf + f]);
        alive = acc[level + 1][i].any();
      }
      if (!alive) continue;
      chosen[level] = c;
      self(self, level + 1);
      if (found || result.budget_exhausted) return;
    }
  };
  recurse(recurse, 0);
  if (!found) return result;

  LinearSchemeMatrices m;
  m.n_files = nf;
  m.n_users = n_users;
  m.subpacketization = t;
  m.cache_dim = req.cache_dim;
  m.tx_dim = req.tx_dim;
  m.demands = req.demands;
  if (placements_outer) {
    for (auto p : chosen) m.placement.push_back(placements[p]);
    for (std::size_t i = 0; i < n_demands; ++i) m.delivery.push_back(deliveries[acc[outer_count][i].first()]);
  } else {
    for (std::size_t u = 0; u < n_users; ++u) m.placement.push_back(placements[acc[outer_count][u].first()]);
    for (auto d : chosen) m.delivery.push_back(deliveries[d]);
  }
  result.witness_index = result.work;
  result.scheme = std::move(m);
  return result;
}

}  // namespace

std::optional<gf2::Matrix> complete_delivery(const std::vector<gf2::Matrix>& placement,
                                             const DemandVector& demand,
                                             std::size_t subpacketization,
                                             const std::vector<gf2::Matrix>& candidates) {
  std::vector<gf2::Basis> bases;
  bases.reserve(placement.size());
  for (const auto& p : placement) bases.push_back(basis_of(p));
  for (const auto& tx : candidates) {
    bool ok = true;
    for (std::size_t u = 0; u < placement.size() && ok; ++u) {
      ok = decodes(bases[u], tx, demand[u], subpacketization);
    }
    if (ok) return tx;
  }
  return std::nullopt;
}

gf2::Matrix canonical_placement(const gf2::Matrix& placement, std::size_t n_files,
                                std::size_t subpacketization) {
  return canonical_under(placement, file_permutations(n_files, subpacketization));
}

SearchResult search_linear_scheme(const SearchRequest& req) {
  const std::size_t cols = req.n_files * req.subpacketization;
  if (cols == 0 || cols > gf2::kMaxColumns) throw std::invalid_argument("search: N*t must be in [1, 64]");
  if (req.cache_dim > cols || req.tx_dim > cols) {
    throw std::invalid_argument("search: cache_dim and tx_dim must not exceed N*t");
  }
  if (req.demands.n_files != req.n_files || req.demands.n_users != req.n_users) {
    throw std::invalid_argument("search: demand set does not match (N, K)");
  }

  SearchResult result;
  if (req.cache_dim == cols) {
    // Everything cached: identity placement, any full-rank delivery works.
    LinearSchemeMatrices m;
    m.n_files = req.n_files;
    m.n_users = req.n_users;
    m.subpacketization = req.subpacketization;
    m.cache_dim = cols;
    m.tx_dim = req.tx_dim;
    m.demands = req.demands;
    gf2::Matrix identity(cols);
    for (std::size_t c = 0; c < cols; ++c) identity.push_row(gf2::Row{1} << c);
    m.placement.assign(req.n_users, identity);
    gf2::Matrix tx(cols);
    for (std::size_t c = 0; c < req.tx_dim; ++c) tx.push_row(gf2::Row{1} << c);
    m.delivery.assign(req.demands.members.size(), tx);
    result.scheme = std::move(m);
  } else if (req.strategy == SearchStrategy::kExhaustive) {
    result = run_exhaustive(req);
  } else {
    result = run_random(req);
  }

  if (result.scheme && !verify_linear(*result.scheme, req.demands).passed) {
    throw std::logic_error("search produced matrices failing verify_linear");
  }
  return result;
}

SearchRequest corner_request(std::size_t cache_dim, std::size_t tx_dim) {
  SearchRequest req;
  req.n_files = 2;
  req.n_users = 4;
  req.subpacketization = 3;
  req.cache_dim = cache_dim;
  req.tx_dim = tx_dim;
  req.demands = restricted_demand_set(2, 2);
  return req;
}

}  // namespace cachepriv
