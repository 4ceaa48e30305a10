#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cachepriv/rational.hpp"
#include "cachepriv/scheme.hpp"
#include "cachepriv/verdict.hpp"

namespace cachepriv {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;

/// Thrown when an enumeration would exceed the atom budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  /// Saturates at UINT64_MAX.
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

struct VerifyOptions {
  /// Subfile width l in bits.
  std::size_t width = 1;
  std::uint64_t budget = kDefaultBudget;
  std::size_t workers = 1;
  /// Atom i is visited at position (i * order_stride) mod |atoms|; must be
  /// coprime with the atom count. Any stride gives identical verdicts.
  std::uint64_t order_stride = 1;
};

/// Options with the budget taken from CACHEPRIV_BUDGET when set.
VerifyOptions default_options();

/// Enumeration space: files x served demands x keys x private randomness.
struct AtomSpace {
  std::size_t width = 1;
  std::uint64_t file_count = 0;    // 2^(N*t*width)
  std::vector<DemandVector> demands;
  std::uint64_t key_count = 0;     // key_alphabet^K
  RandomnessSpace randomness;
  std::uint64_t randomness_count = 0;
  std::uint64_t total = 0;         // saturating product

  static AtomSpace of(const Scheme& s, std::size_t width);
};

/// One enumerated realization of (W, D, S, P).
struct Atom {
  std::uint64_t files = 0;
  std::size_t demand_index = 0;
  KeyAssignment keys;
  PrivateRandomness randomness;
};

Atom atom_at(const Scheme& s, const AtomSpace& space, std::uint64_t index);
std::string describe(const Scheme& s, const AtomSpace& space, const Atom& atom);

/// Canonical byte string of user k's view (Z_k, X, D_k); identical views
/// serialize identically.
std::string serialize_view(const CacheContent& cache, const DeliveryMessage& message,
                           FileIndex own_demand);

/// Exact joint counts of (D_{-k}; Z_k, X, D_k) for one user.
struct JointDistribution {
  std::size_t user = 0;
  /// Number of values of D_{-k}.
  std::size_t rest_values = 0;
  /// observation -> counts indexed by the rank of D_{-k}.
  std::unordered_map<std::string, std::vector<std::uint64_t>> cells;
  /// First atom index producing each observation (for counterexamples).
  std::unordered_map<std::string, std::uint64_t> witness;
  std::vector<std::uint64_t> rest_marginal;
  std::uint64_t total = 0;

  void add(const std::string& observation, std::size_t rest, std::uint64_t atom_index);
  /// Adds counts; associative and commutative.
  void merge(const JointDistribution& other);
  /// First cell violating count(r, o) * total == count(r) * count(o), if any.
  /// Cells are scanned in sorted observation order.
  std::optional<std::pair<std::string, std::size_t>> first_violation() const;
  /// I(D_{-k}; Z_k, X, D_k) in bits. Diagnostic only.
  double mutual_information_bits() const;
};

JointDistribution privacy_table(const Scheme& s, std::size_t user, const VerifyOptions& options);

/// For every atom and user: decode(...) == W_{D_k}. Non-private schemes
/// are quantified over their served demands only.
Verdict check_decodability(const Scheme& s, const VerifyOptions& options);

/// Exact independence of D_{-k} and (Z_k, X, D_k) by integer cross
/// multiplication. Requires a private scheme.
Verdict check_privacy(const Scheme& s, std::size_t user, const VerifyOptions& options);

/// N = K = 2: for each user k and file j, the law of (X, Z_k, W_j) given
/// D_k = j does not depend on D_{1-k}.
Verdict check_lemma1(const Scheme& s, const VerifyOptions& options);

struct RateMeasurement {
  Rational memory;
  Rational rate;
  std::size_t header_bits = 0;
};

/// Cache bits / F (stored key excluded), payload bits / F (header excluded),
/// header bits. Measured by running placement and delivery.
RateMeasurement measure_rates(const Scheme& s, std::size_t width);

/// Decodability, privacy for every user (private schemes), and the
/// conditional-law check (private N = K = 2 schemes).
std::vector<Verdict> verify_all(const Scheme& s, const VerifyOptions& options);

}  // namespace cachepriv
