#include "cachepriv/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace cachepriv::gf2 {
namespace {

Row column_mask(std::size_t cols) {
  return cols >= 64 ? ~Row{0} : (Row{1} << cols) - 1;
}

void check_cols(std::size_t cols) {
  if (cols > kMaxColumns) throw std::invalid_argument("gf2: at most 64 columns supported");
}

}  // namespace

Matrix::Matrix(std::size_t cols, std::vector<Row> rows) : cols_(cols), rows_(std::move(rows)) {
  check_cols(cols);
  for (auto r : rows_) {
    if ((r & ~column_mask(cols_)) != 0) throw std::invalid_argument("gf2: row wider than matrix");
  }
}

void Matrix::push_row(Row r) {
  if ((r & ~column_mask(cols_)) != 0) throw std::invalid_argument("gf2: row wider than matrix");
  rows_.push_back(r);
}

void Matrix::set_row(std::size_t i, Row r) {
  if ((r & ~column_mask(cols_)) != 0) throw std::invalid_argument("gf2: row wider than matrix");
  rows_.at(i) = r;
}

std::size_t Matrix::rank() const {
  Basis b;
  for (auto r : rows_) b.insert(r);
  return b.rank();
}

Matrix Matrix::rref() const {
  std::vector<Row> rows = rows_;
  std::vector<Row> out;
  for (std::size_t col = 0; col < cols_; ++col) {
    const Row bit = Row{1} << col;
    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i] & bit) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    const Row p = rows[pivot];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
    for (auto& r : rows) {
      if (r & bit) r ^= p;
    }
    for (auto& r : out) {
      if (r & bit) r ^= p;
    }
    out.push_back(p);
  }
  return Matrix(cols_, std::move(out));
}

std::string Matrix::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i > 0) s += ';';
    for (std::size_t c = 0; c < cols_; ++c) s += ((rows_[i] >> c) & 1U) ? '1' : '0';
  }
  return s;
}

Matrix Matrix::parse(const std::string& text, std::size_t cols) {
  Matrix m(cols);
  check_cols(cols);
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    auto end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string row = text.substr(start, end - start);
    if (row.size() != cols) throw std::invalid_argument("gf2: row '" + row + "' has wrong width");
    Row r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (row[c] == '1') {
        r |= Row{1} << c;
      } else if (row[c] != '0') {
        throw std::invalid_argument("gf2: row '" + row + "' is not binary");
      }
    }
    m.rows_.push_back(r);
    start = end + 1;
  }
  return m;
}

bool Basis::insert(Row r) {
  if (inserted_ >= 64) throw std::length_error("gf2::Basis: more than 64 inserted rows");
  std::uint64_t combo = std::uint64_t{1} << inserted_;
  ++inserted_;
  for (const auto& e : pivots_) {
    if ((r >> e.pivot) & 1U) {
      r ^= e.row;
      combo ^= e.combo;
    }
  }
  if (r == 0) return false;
  const int pivot = std::countr_zero(r);
  // Keep the basis fully reduced at the pivot columns.
  for (auto& e : pivots_) {
    if ((e.row >> pivot) & 1U) {
      e.row ^= r;
      e.combo ^= combo;
    }
  }
  pivots_.push_back({r, combo, pivot});
  return true;
}

Row Basis::reduce(Row r) const {
  for (const auto& e : pivots_) {
    if ((r >> e.pivot) & 1U) r ^= e.row;
  }
  return r;
}

std::optional<std::uint64_t> Basis::combination(Row r) const {
  std::uint64_t combo = 0;
  for (const auto& e : pivots_) {
    if ((r >> e.pivot) & 1U) {
      r ^= e.row;
      combo ^= e.combo;
    }
  }
  if (r != 0) return std::nullopt;
  return combo;
}

bool spans(const Matrix& a, const Matrix& b, Row target) {
  Basis basis;
  for (auto r : a.rows()) basis.insert(r);
  for (auto r : b.rows()) basis.insert(r);
  return basis.contains(target);
}

std::vector<Matrix> enumerate_subspaces(std::size_t k, std::size_t n) {
  check_cols(n);
  std::vector<Matrix> out;
  if (k > n) return out;
  if (k == 0) {
    out.emplace_back(n);
    return out;
  }
  // Pivot column sets in increasing bitmask order; free entries are the
  // non-pivot columns to the right of each row's pivot.
  const Row all = column_mask(n);
  for (Row pivots = 0; pivots <= all; ++pivots) {
    if (static_cast<std::size_t>(std::popcount(pivots)) != k) {
      if (pivots == all) break;
      continue;
    }
    std::vector<std::size_t> pcols;
    for (std::size_t c = 0; c < n; ++c) {
      if ((pivots >> c) & 1U) pcols.push_back(c);
    }
    std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t c = pcols[i] + 1; c < n; ++c) {
        if (!((pivots >> c) & 1U)) free.emplace_back(i, c);
      }
    }
    if (free.size() >= 40) throw std::length_error("enumerate_subspaces: space too large");
    for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << free.size()); ++fill) {
      std::vector<Row> rows(k);
      for (std::size_t i = 0; i < k; ++i) rows[i] = Row{1} << pcols[i];
      for (std::size_t f = 0; f < free.size(); ++f) {
        if ((fill >> f) & 1U) rows[free[f].first] |= Row{1} << free[f].second;
      }
      out.emplace_back(n, std::move(rows));
    }
    if (pivots == all) break;
  }
  return out;
}

Matrix random_full_rank(std::size_t k, std::size_t n, std::mt19937_64& rng) {
  check_cols(n);
  if (k > n) throw std::invalid_argument("random_full_rank: k > n");
  const Row mask = column_mask(n);
  for (;;) {
    Matrix m(n);
    Basis b;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      const Row r = rng() & mask;
      ok = b.insert(r);
      m.push_row(r);
    }
    if (ok) return m;
  }
}

Row permute_columns(Row r, const std::vector<std::size_t>& perm) {
  Row out = 0;
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if ((r >> perm[j]) & 1U) out |= Row{1} << j;
  }
  return out;
}

}  // namespace cachepriv::gf2
