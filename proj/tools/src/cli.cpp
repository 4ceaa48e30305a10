#include "cachepriv_cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cachepriv/descriptor.hpp"
#include "cachepriv/lift.hpp"
#include "cachepriv/region.hpp"
#include "cachepriv/schemes.hpp"
#include "cachepriv/search.hpp"
#include "cachepriv/session.hpp"
#include "cachepriv/verifier.hpp"
#include "cachepriv/witness.hpp"

namespace cachepriv::cli {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::size_t parse_count(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) {
    throw UsageError("expected a non-negative integer, got '" + s + "'");
  }
  return std::stoul(s);
}

Rational parse_rational_arg(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("expected a rational p/q, got '" + s + "'");
  }
}

// "N,K,M"
std::tuple<std::size_t, std::size_t, Rational> parse_nkm(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError("expected N,K,M, got '" + s + "'");
  return {parse_count(parts[0]), parse_count(parts[1]), parse_rational_arg(parts[2])};
}

SchemePtr resolve_share(const std::string& rest) {
  const auto colon = rest.find(':');
  if (colon == std::string::npos) throw UsageError("share needs share:L:a:b");
  const Rational lambda = parse_rational_arg(rest.substr(0, colon));
  const std::string pair = rest.substr(colon + 1);
  // Scheme names may contain ':'; take the first split where both halves resolve.
  for (auto pos = pair.find(':'); pos != std::string::npos; pos = pair.find(':', pos + 1)) {
    SchemePtr a;
    SchemePtr b;
    try {
      a = resolve_scheme(pair.substr(0, pos));
      b = resolve_scheme(pair.substr(pos + 1));
    } catch (const UsageError&) {
      continue;
    }
    try {
      return memory_share(a, b, lambda);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("cannot split '" + pair + "' into two scheme names");
}

std::vector<FileIndex> parse_demands(const std::string& s) {
  std::vector<FileIndex> d;
  for (const auto& part : split(s, ',')) d.push_back(static_cast<FileIndex>(parse_count(part)));
  return d;
}

void print_verdict(std::ostream& out, const Verdict& v) {
  out << v.check << ": " << (v.passed ? "PASS" : "FAIL") << " (" << v.atoms << " realizations, " << v.cases
      << " cases";
  if (v.check.rfind("privacy", 0) == 0) out << ", MI=" << v.mutual_information_bits << " bits";
  out << ")\n";
  if (v.counterexample) out << "  counterexample: " << *v.counterexample << "\n";
}

int run_verify(const std::string& name, std::size_t width, std::optional<std::size_t> user,
               std::optional<std::uint64_t> budget, std::size_t workers, bool json, std::ostream& out) {
  const SchemePtr s = resolve_scheme(name);
  VerifyOptions opts = default_options();
  opts.width = width;
  opts.workers = workers;
  if (budget) opts.budget = *budget;
  const auto& p = s->params();
  if (user && *user >= p.n_users) throw UsageError("--user out of range");

  std::vector<Verdict> verdicts;
  verdicts.push_back(check_decodability(*s, opts));
  if (s->privacy() == PrivacyClass::kPrivate) {
    for (std::size_t k = 0; k < p.n_users; ++k) {
      if (!user || *user == k) verdicts.push_back(check_privacy(*s, k, opts));
    }
    if (p.n_files == 2 && p.n_users == 2) verdicts.push_back(check_lemma1(*s, opts));
  }
  bool ok = true;
  if (!json) out << p.name << " (" << to_string(s->privacy()) << ", l=" << width << ")\n";
  for (const auto& v : verdicts) {
    ok = ok && v.passed;
    if (json) {
      out << to_json(v) << "\n";
    } else {
      print_verdict(out, v);
    }
  }
  return ok ? kOk : kCheckFailed;
}

int run_search(const std::string& target, std::size_t t, std::uint64_t seed, std::uint64_t budget,
               bool exhaustive, bool regen, std::size_t workers, const std::string& out_path,
               std::ostream& out) {
  SearchRequest req;
  if (regen) {
    req = corner_request(4, 1);
    req.seed = kDualWitnessSeed;
  } else {
    const auto parts = split(target, ',');
    if (parts.size() != 2) throw UsageError("--target expects M,R");
    const Rational m = parse_rational_arg(parts[0]);
    const Rational r = parse_rational_arg(parts[1]);
    const Rational tt(static_cast<std::int64_t>(t));
    if ((m * tt).denominator() != 1 || (r * tt).denominator() != 1 || m < Rational(0) || r < Rational(0)) {
      throw UsageError("--target must give non-negative integral M*t and R*t");
    }
    req = corner_request(static_cast<std::size_t>((m * tt).numerator()),
                         static_cast<std::size_t>((r * tt).numerator()));
    req.subpacketization = t;
    req.seed = seed;
  }
  req.budget = budget;
  req.workers = workers;
  if (exhaustive) req.strategy = SearchStrategy::kExhaustive;
  try {
    req.demands = restricted_demand_set(req.n_files, req.n_users / req.n_files);
    const SearchResult r = search_linear_scheme(req);
    if (!r.scheme) {
      out << (r.budget_exhausted ? "budget exhausted" : "no scheme exists in the enumerated space") << " after "
          << r.work << " steps\n";
      return r.budget_exhausted ? kBudget : kCheckFailed;
    }
    out << "found at index " << r.witness_index << " after " << r.work << " steps\n";
    if (regen) {
      const bool same = *r.scheme == dual_corner_matrices();
      out << "committed witness: " << (same ? "identical" : "DIFFERS") << "\n";
      if (!same) out << export_descriptor(*r.scheme);
      return same ? kOk : kCheckFailed;
    }
    if (out_path.empty()) {
      out << export_descriptor(*r.scheme);
    } else {
      save_descriptor(*r.scheme, out_path);
      out << "wrote " << out_path << "\n";
    }
    return kOk;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int run_simulate(const std::string& name, const std::string& demands, std::uint64_t seed, std::size_t width,
                 const std::string& out_path, std::ostream& out) {
  const SchemePtr s = resolve_scheme(name);
  const auto d = parse_demands(demands);
  SessionTranscript t;
  try {
    t = simulate_session(*s, d, seed, width);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out << "placement frames: " << t.placements.size() << "\n";
  out << "broadcast: header " << t.delivery.header.size() << " bits, payload " << t.delivery.payload.size()
      << " bits\n";
  for (const auto& r : t.reports) {
    out << "user " << r.user << " file " << r.file << ": " << (r.match ? "match" : "MISMATCH") << "\n";
  }
  if (!out_path.empty()) {
    const auto bytes = t.encode();
    std::ofstream f(out_path, std::ios::binary);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("cannot write " + out_path);
    out << "wrote " << bytes.size() << " bytes to " << out_path << "\n";
  }
  return t.all_match() ? kOk : kCheckFailed;
}

}  // namespace

SchemePtr resolve_scheme(const std::string& name) {
  auto tail = [&](const std::string& prefix) -> std::optional<std::string> {
    if (name.rfind(prefix, 0) == 0) return name.substr(prefix.size());
    return std::nullopt;
  };
  try {
    if (name == "example1") return example1_scheme();
    if (name == "dual") return dual_example_scheme();
    if (name == "tian") return tian_2x4_scheme();
    if (name == "dual_corner") return dual_corner_scheme();
    if (auto r = tail("thm1:")) {
      auto [n, k, m] = parse_nkm(*r);
      return theorem1_scheme(n, k, m);
    }
    if (auto r = tail("baseline:")) {
      auto [n, k, m] = parse_nkm(*r);
      return baseline_uncoded(n, k, m);
    }
    if (auto r = tail("share:")) return resolve_share(*r);
    if (auto r = tail("lift:")) {
      const SchemePtr inner = resolve_scheme(*r);
      const auto& p = inner->params();
      if (p.n_files == 0 || p.n_users % p.n_files != 0) throw UsageError("lift: users must be a multiple of files");
      return lift_private(inner, p.n_files, p.n_users / p.n_files);
    }
    if (auto r = tail("plaintext:")) return with_plaintext_demand_header(resolve_scheme(*r));
    if (std::filesystem::is_regular_file(name)) return compile_linear(load_descriptor(name), name);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(name + ": " + e.what());
  }
  throw UsageError("unknown scheme '" + name + "'");
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Demand-private coded caching: schemes, exhaustive verifier, search, region"};
  app.name("cachepriv");
  app.require_subcommand(1, 1);

  std::string scheme;
  std::size_t width = 1;
  std::optional<std::size_t> user;
  std::optional<std::uint64_t> budget;
  std::size_t workers = 1;
  bool json = false;
  auto* verify = app.add_subcommand("verify", "Exhaustive decodability and privacy checks");
  verify->add_option("scheme", scheme, "Scheme name or descriptor path")->required();
  verify->add_option("--l", width, "Subfile width in bits")->check(CLI::Range(1, 64));
  verify->add_option("--user", user, "Check privacy for this user only");
  verify->add_option("--budget", budget, "Maximum enumerated realizations (default 2^28 or CACHEPRIV_BUDGET)");
  verify->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1, 256));
  verify->add_flag("--json", json, "One JSON verdict per line");

  auto* measure = app.add_subcommand("measure", "Measured M, R and header size");
  measure->add_option("scheme", scheme, "Scheme name or descriptor path")->required();
  measure->add_option("--l", width, "Subfile width in bits")->check(CLI::Range(1, 64));

  std::string step = "1/6";
  std::string out_prefix = "fig2";
  auto* region = app.add_subcommand("region", "Emit the N=K=2 boundary and scheme points");
  region->add_option("--step", step, "Sampling step in M (rational)");
  region->add_option("--out", out_prefix, "Output prefix for .csv and .svg");

  std::string target = "4/3,1/3";
  std::size_t t = 3;
  std::uint64_t seed = kDualWitnessSeed;
  std::uint64_t search_budget = 1'000'000;
  bool exhaustive = false;
  bool regen = false;
  std::string descriptor_out;
  auto* search = app.add_subcommand("search", "Search GF(2) linear D_RS schemes for N=2, 4 virtual users");
  search->add_option("--target", target, "Target M,R");
  search->add_option("--t", t, "Subpacketization")->check(CLI::Range(1, 32));
  search->add_option("--seed", seed, "Seed");
  search->add_option("--budget", search_budget, "Restarts, or nodes with --exhaustive");
  search->add_flag("--exhaustive", exhaustive, "Complete enumeration instead of random restarts");
  search->add_flag("--regen", regen, "Re-derive the committed (4/3, 1/3) witness and diff");
  search->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1, 256));
  search->add_option("--out", descriptor_out, "Write the descriptor here");

  std::string demands;
  std::uint64_t sim_seed = 0;
  std::size_t sim_width = 8;
  std::string transcript_out;
  auto* simulate = app.add_subcommand("simulate", "Run one broadcast session");
  simulate->add_option("scheme", scheme, "Scheme name or descriptor path")->required();
  simulate->add_option("--demands", demands, "d0,d1,...")->required();
  simulate->add_option("--seed", sim_seed, "Seed");
  simulate->add_option("--l", sim_width, "Subfile width in bits")->check(CLI::Range(1, 64));
  simulate->add_option("--out", transcript_out, "Write the framed transcript here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return run_verify(scheme, width, user, budget, workers, json, out);
    if (*measure) {
      const SchemePtr s = resolve_scheme(scheme);
      const auto m = measure_rates(*s, width);
      out << "M=" << to_string(m.memory) << " R=" << to_string(m.rate) << " header_bits=" << m.header_bits << "\n";
      return kOk;
    }
    if (*region) {
      const Rational step_value = parse_rational_arg(step);
      if (step_value <= Rational(0) || step_value > Rational(2)) throw UsageError("--step must lie in (0, 2]");
      const auto r = emit_region(out_prefix, step_value);
      out << "wrote " << r.csv_path << " (" << r.boundary.size() << " boundary rows, " << r.measured.size()
          << " schemes) and " << r.svg_path << "\n";
      return kOk;
    }
    if (*search) {
      return run_search(target, t, seed, search_budget, exhaustive, regen, workers, descriptor_out, out);
    }
    if (*simulate) return run_simulate(scheme, demands, sim_seed, sim_width, transcript_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace cachepriv::cli
