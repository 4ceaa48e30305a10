#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cachepriv/scheme.hpp"

namespace cachepriv::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scheme from a CLI name: example1, dual, tian, dual_corner,
/// thm1:N,K,M, baseline:N,K,M, share:L:a:b, lift:<name>,
/// plaintext:<name>, or a descriptor file path. Throws UsageError.
SchemePtr resolve_scheme(const std::string& name);

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cachepriv::cli
