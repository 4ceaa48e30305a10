#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cachepriv::gf2 {

/// A row over GF(2) with at most 64 columns; column j is bit j.
using Row = std::uint64_t;

inline constexpr std::size_t kMaxColumns = 64;

/// Dense GF(2) matrix stored as packed rows.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t cols) : cols_(cols) {}
  Matrix(std::size_t cols, std::vector<Row> rows);

  std::size_t cols() const { return cols_; }
  std::size_t n_rows() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  Row row(std::size_t i) const { return rows_.at(i); }
  void push_row(Row r);
  void set_row(std::size_t i, Row r);

  std::size_t rank() const;
  bool full_row_rank() const { return rank() == n_rows(); }
  /// Reduced row echelon form of the row space, zero rows dropped.
  Matrix rref() const;
  /// Rows written as '0'/'1' strings, column 0 first, separated by ';'.
  std::string to_string() const;
  static Matrix parse(const std::string& text, std::size_t cols);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

/// Echelon basis built incrementally by XOR elimination.
///
/// Every stored vector remembers which inserted rows it combines, so span
/// membership queries can also return a certificate.
class Basis {
 public:
  /// Returns true if `r` was independent of the current span.
  bool insert(Row r);
  /// Residual of `r` after elimination; zero iff r is in the span.
  Row reduce(Row r) const;
  bool contains(Row r) const { return reduce(r) == 0; }
  /// Mask over insertion order of rows whose XOR equals `r`, if any.
  /// Dependent inserted rows are still numbered.
  std::optional<std::uint64_t> combination(Row r) const;
  std::size_t rank() const { return pivots_.size(); }
  std::size_t inserted() const { return inserted_; }

 private:
  struct Entry {
    Row row;
    std::uint64_t combo;
    int pivot;
  };
  std::vector<Entry> pivots_;
  std::size_t inserted_ = 0;
};

/// Row space of `a` stacked with `b` contains `target`.
bool spans(const Matrix& a, const Matrix& b, Row target);

/// Every k x n matrix in reduced row echelon form with rank k (one per
/// k-dimensional subspace of GF(2)^n), in a fixed order.
std::vector<Matrix> enumerate_subspaces(std::size_t k, std::size_t n);

/// Uniformly random full-row-rank k x n matrix (rejection sampling on rows).
Matrix random_full_rank(std::size_t k, std::size_t n, std::mt19937_64& rng);

/// Applies a column permutation: column j of the result is column perm[j]
/// of the input row.
Row permute_columns(Row r, const std::vector<std::size_t>& perm);

}  // namespace cachepriv::gf2
