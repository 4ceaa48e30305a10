#include <random>

#include <benchmark/benchmark.h>

#include "cachepriv/gf2.hpp"
#include "cachepriv/lift.hpp"
#include "cachepriv/search.hpp"
#include "cachepriv/session.hpp"
#include "cachepriv/verifier.hpp"
#include "cachepriv/witness.hpp"

using namespace cachepriv;

static void BM_Gf2Rank(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  gf2::Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.push_row(rng() & (n == 64 ? ~gf2::Row{0} : (gf2::Row{1} << n) - 1));
  for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_Gf2Rank)->Arg(6)->Arg(16)->Arg(64);

static void BM_Gf2Rref(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  gf2::Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.push_row(rng() & (n == 64 ? ~gf2::Row{0} : (gf2::Row{1} << n) - 1));
  for (auto _ : state) benchmark::DoNotOptimize(m.rref());
}
BENCHMARK(BM_Gf2Rref)->Arg(6)->Arg(16)->Arg(64);

static void BM_VerifyLowMemoryLift(benchmark::State& state) {
  const auto s = example1_scheme();
  VerifyOptions opts;
  opts.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_all(*s, opts));
}
BENCHMARK(BM_VerifyLowMemoryLift)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_VerifyLinearWitness(benchmark::State& state) {
  const auto m = dual_corner_matrices();
  for (auto _ : state) benchmark::DoNotOptimize(verify_linear(m, m.demands));
}
BENCHMARK(BM_VerifyLinearWitness);

static void BM_SearchDualCorner(benchmark::State& state) {
  auto req = corner_request(4, 1);
  req.seed = kDualWitnessSeed;
  for (auto _ : state) benchmark::DoNotOptimize(search_linear_scheme(req));
}
BENCHMARK(BM_SearchDualCorner)->Unit(benchmark::kMillisecond);

static void BM_SimulateSession(benchmark::State& state) {
  const auto s = dual_example_scheme();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_session(*s, {0, 1}, seed++, 64));
}
BENCHMARK(BM_SimulateSession);
BENCHMARK_MAIN();
