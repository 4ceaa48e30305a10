#include "cachepriv/linear.hpp"

#include <optional>
#include <stdexcept>

namespace cachepriv {

Rational LinearSchemeMatrices::memory() const {
  return Rational(static_cast<std::int64_t>(cache_dim), static_cast<std::int64_t>(subpacketization));
}

Rational LinearSchemeMatrices::rate() const {
  return Rational(static_cast<std::int64_t>(tx_dim), static_cast<std::int64_t>(subpacketization));
}

void LinearSchemeMatrices::validate() const {
  if (n_files == 0 || n_users == 0 || subpacketization == 0) {
    throw std::invalid_argument("linear scheme: N, K and t must be positive");
  }
  if (columns() > gf2::kMaxColumns) throw std::invalid_argument("linear scheme: N*t exceeds 64");
  if (placement.size() != n_users) throw std::invalid_argument("linear scheme: one placement per user");
  for (const auto& p : placement) {
    if (p.cols() != columns() || p.n_rows() != cache_dim) {
      throw std::invalid_argument("linear scheme: placement matrix must be cache_dim x N*t");
    }
    if (!p.full_row_rank()) throw std::invalid_argument("linear scheme: placement matrix is rank deficient");
  }
  if (demands.n_files != n_files || demands.n_users != n_users) {
    throw std::invalid_argument("linear scheme: demand set dimensions mismatch");
  }
  if (delivery.size() != demands.members.size()) {
    throw std::invalid_argument("linear scheme: one delivery matrix per served demand");
  }
  for (const auto& d : delivery) {
    if (d.cols() != columns() || d.n_rows() != tx_dim) {
      throw std::invalid_argument("linear scheme: delivery matrix must be tx_dim x N*t");
    }
    if (!d.full_row_rank()) throw std::invalid_argument("linear scheme: delivery matrix is rank deficient");
  }
  for (const auto& d : demands.members) validate_demands(d, n_files, n_users);
}

const gf2::Matrix& LinearSchemeMatrices::delivery_for(const DemandVector& d) const {
  return delivery.at(demands.index_of(d));
}

bool operator==(const LinearSchemeMatrices& a, const LinearSchemeMatrices& b) {
  return a.n_files == b.n_files && a.n_users == b.n_users &&
         a.subpacketization == b.subpacketization && a.cache_dim == b.cache_dim &&
         a.tx_dim == b.tx_dim && a.placement == b.placement &&
         a.demands.members == b.demands.members && a.delivery == b.delivery;
}

gf2::Row symbol_row(std::size_t file, std::size_t subfile, std::size_t subpacketization) {
  return gf2::Row{1} << (file * subpacketization + subfile);
}

namespace {

std::string join_demand(const DemandVector& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s;
}

}  // namespace

Verdict verify_linear(const LinearSchemeMatrices& m, const DemandSubset& demands) {
  m.validate();
  Verdict v;
  v.check = "verify_linear";
  for (const auto& d : demands.members) {
    if (!m.demands.contains(d)) {
      v.fail("demand (" + join_demand(d) + ") has no delivery matrix");
      continue;
    }
    const auto& tx = m.delivery_for(d);
    for (std::size_t u = 0; u < m.n_users; ++u) {
      gf2::Basis basis;
      for (auto r : m.placement[u].rows()) basis.insert(r);
      for (auto r : tx.rows()) basis.insert(r);
      for (std::size_t s = 0; s < m.subpacketization; ++s) {
        ++v.cases;
        if (!basis.contains(symbol_row(d[u], s, m.subpacketization))) {
          v.fail("demand (" + join_demand(d) + "), user " + std::to_string(u) + ": symbol " +
                 std::to_string(s) + " of file " + std::to_string(d[u]) +
                 " outside span(placement, delivery)");
        }
      }
    }
  }
  return v;
}

namespace {

class LinearScheme final : public Scheme {
 public:
  LinearScheme(LinearSchemeMatrices m, std::string name) : m_(std::move(m)) {
    m_.validate();
    params_.name = std::move(name);
    params_.n_files = m_.n_files;
    params_.n_users = m_.n_users;
    params_.subpacketization = m_.subpacketization;
    params_.memory = m_.memory();
    params_.rate = m_.rate();
    header_bits_ = bits_for_alphabet(m_.demands.members.size());
    // decoders_[demand][user][file][subfile]: mask over (cache rows, delivery rows).
    decoders_.resize(m_.demands.members.size());
    for (std::size_t di = 0; di < m_.demands.members.size(); ++di) {
      decoders_[di].resize(m_.n_users);
      for (std::size_t u = 0; u < m_.n_users; ++u) {
        gf2::Basis basis;
        for (auto r : m_.placement[u].rows()) basis.insert(r);
        for (auto r : m_.delivery[di].rows()) basis.insert(r);
        auto& per_file = decoders_[di][u];
        per_file.resize(m_.n_files);
        for (std::size_t f = 0; f < m_.n_files; ++f) {
          for (std::size_t s = 0; s < m_.subpacketization; ++s) {
            per_file[f].push_back(basis.combination(symbol_row(f, s, m_.subpacketization)));
          }
        }
      }
    }
  }

  const SchemeParams& params() const override { return params_; }
  PrivacyClass privacy() const override {
    return m_.demands.kind == DemandSetKind::kFull ? PrivacyClass::kNonPrivate
                                                   : PrivacyClass::kSubsetNonPrivate;
  }
  std::size_t header_bits() const override { return header_bits_; }
  std::vector<DemandVector> served_demands() const override { return m_.demands.members; }
  bool serves(const DemandVector& d) const override { return m_.demands.contains(d); }

  CacheContent place(std::size_t user, Key key, const FileStore& files) const override {
    return {apply(m_.placement.at(user), files), key};
  }

  DeliveryMessage deliver(const FileStore& files, const DemandVector& demands,
                          std::span<const Key> /*keys*/,
                          const PrivateRandomness& /*randomness*/) const override {
    const auto di = m_.demands.index_of(demands);
    return {apply(m_.delivery[di], files), BitVector::from_uint(di, header_bits_)};
  }

  BitVector demand_header(const DemandVector& demands) const override {
    return BitVector::from_uint(m_.demands.index_of(demands), header_bits_);
  }

  BitVector decode(std::size_t user, FileIndex demand, Key /*key*/, const DeliveryMessage& message,
                   const CacheContent& cache) const override {
    const std::size_t di = message.header.read_uint(0, header_bits_);
    const std::size_t cache_rows = m_.cache_dim;
    std::size_t width = 0;
    if (cache_rows > 0) {
      width = cache.coded.size() / cache_rows;
    } else if (m_.tx_dim > 0) {
      width = message.payload.size() / m_.tx_dim;
    }
    BitVector out;
    for (const auto& combo : decoders_.at(di).at(user).at(demand)) {
      BitVector sym(width);
      if (combo) {
        for (std::size_t i = 0; i < cache_rows + m_.tx_dim; ++i) {
          if (!((*combo >> i) & 1U)) continue;
          sym ^= i < cache_rows ? cache.coded.slice(i * width, width)
                                : message.payload.slice((i - cache_rows) * width, width);
        }
      }
      out.append(sym);
    }
    return out;
  }

 private:
  static BitVector apply(const gf2::Matrix& matrix, const FileStore& files) {
    const std::size_t t = files.subpacketization();
    BitVector out;
    for (auto row : matrix.rows()) {
      BitVector sym(files.width());
      for (std::size_t c = 0; c < files.n_files() * t; ++c) {
        if ((row >> c) & 1U) sym ^= files.symbol(c / t, c % t);
      }
      out.append(sym);
    }
    return out;
  }

  LinearSchemeMatrices m_;
  SchemeParams params_;
  std::size_t header_bits_ = 0;
  std::vector<std::vector<std::vector<std::vector<std::optional<std::uint64_t>>>>> decoders_;
};

}  // namespace

SchemePtr compile_linear(const LinearSchemeMatrices& m, std::string name) {
  return std::make_shared<LinearScheme>(m, std::move(name));
}

LinearSchemeMatrices tian_2x4_matrices() {
  // Columns 0..2 are A1..A3, columns 3..5 are B1..B3.
  auto row = [](std::initializer_list<int> cols) {
    gf2::Row r = 0;
    for (int c : cols) r |= gf2::Row{1} << c;
    return r;
  };
  constexpr int A1 = 0, A2 = 1, A3 = 2, B1 = 3, B2 = 4, B3 = 5;

  LinearSchemeMatrices m;
  m.n_files = 2;
  m.n_users = 4;
  m.subpacketization = 3;
  m.cache_dim = 1;
  m.tx_dim = 4;
  m.demands = restricted_demand_set(2, 2);
  m.placement = {
      gf2::Matrix(6, {row({A1, B1})}),                      // C_{0,0}
      gf2::Matrix(6, {row({A3, B3})}),                      // C_{0,1}
      gf2::Matrix(6, {row({A2, B2})}),                      // C_{1,0}
      gf2::Matrix(6, {row({A1, A2, A3, B1, B2, B3})}),      // C_{1,1}
  };
  m.delivery = {
      gf2::Matrix(6, {row({B1}), row({B2}), row({A3}), row({A1, A2, A3})}),  // T_{(0,0)}
      gf2::Matrix(6, {row({A2}), row({A3}), row({B1}), row({B1, B2, B3})}),  // T_{(0,1)}
      gf2::Matrix(6, {row({B2}), row({B3}), row({A1}), row({A1, A2, A3})}),  // T_{(1,0)}
      gf2::Matrix(6, {row({A1}), row({A2}), row({B3}), row({B1, B2, B3})}),  // T_{(1,1)}
  };
  return m;
}

}  // namespace cachepriv
