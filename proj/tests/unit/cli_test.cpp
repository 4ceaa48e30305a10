#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cachepriv/descriptor.hpp"
#include "cachepriv/witness.hpp"
#include "cachepriv_cli/cli.hpp"

using namespace cachepriv;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cachepriv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "cachepriv_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, MeasureLowMemoryLift) {
  const auto r = run({"measure", "example1"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "M=1/3 R=4/3 header_bits=2\n");
}

TEST(Cli, MeasureShare) {
  const auto r = run({"measure", "share:1/3:example1:dual"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "M=1 R=2/3 header_bits=4\n");
}

TEST(Cli, VerifyPasses) {
  const auto r = run({"verify", "example1"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("decodability: PASS (1024 realizations, 2048 cases)"), std::string::npos);
  EXPECT_NE(r.out.find("privacy(user=1): PASS"), std::string::npos);
  EXPECT_NE(r.out.find("lemma1: PASS"), std::string::npos);
}

TEST(Cli, VerifyNegativeControlFails) {
  const auto r = run({"verify", "plaintext:baseline:2,2,1"});
  EXPECT_EQ(r.code, cli::kCheckFailed);
  EXPECT_NE(r.out.find("privacy(user=0): FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("MI=1 bits"), std::string::npos);
  EXPECT_NE(r.out.find("counterexample"), std::string::npos);
}

TEST(Cli, VerifyJsonLines) {
  const auto r = run({"verify", "dual", "--json", "--user", "0"});
  EXPECT_EQ(r.code, cli::kOk);
  std::istringstream in(r.out);
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line); ++lines) EXPECT_EQ(line.front(), '{');
  EXPECT_GE(lines, 2u);
  EXPECT_NE(r.out.find("\"check\":\"privacy(user=0)\""), std::string::npos);
  EXPECT_EQ(r.out.find("privacy(user=1)"), std::string::npos);
}

TEST(Cli, BudgetExceeded) {
  const auto r = run({"verify", "thm1:3,2,0", "--budget", "100"});
  EXPECT_EQ(r.code, cli::kBudget);
  EXPECT_NE(r.err.find("2304"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"verify", "nosuch"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify"}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"measure", "thm1:2,2"}).code, cli::kUsage);
  EXPECT_EQ(run({"simulate", "example1", "--demands", "0,5"}).code, cli::kUsage);
  EXPECT_EQ(run({"region", "--step", "0"}).code, cli::kUsage);
  EXPECT_EQ(run({"search", "--target", "1/2"}).code, cli::kUsage);
}

TEST(Cli, ResolvesNames) {
  for (const char* name : {"example1", "dual", "tian", "dual_corner", "thm1:3,2,0", "baseline:2,2,1",
                           "share:1/2:example1:dual", "lift:tian", "plaintext:baseline:2,2,1"}) {
    EXPECT_NO_THROW(cli::resolve_scheme(name)) << name;
  }
  EXPECT_THROW(cli::resolve_scheme("share:2:example1:dual"), cli::UsageError);
  EXPECT_THROW(cli::resolve_scheme("thm1:0,2,0"), cli::UsageError);
}

TEST(Cli, RegionWritesFiles) {
  const auto prefix = (temp_dir() / "fig").string();
  const auto r = run({"region", "--step", "1/6", "--out", prefix});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_TRUE(std::filesystem::exists(prefix + ".csv"));
  EXPECT_TRUE(std::filesystem::exists(prefix + ".svg"));
}

TEST(Cli, SimulateReportsMatches) {
  const auto r = run({"simulate", "example1", "--demands", "0,1", "--seed", "7"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("header 2 bits, payload 32 bits"), std::string::npos);
  EXPECT_NE(r.out.find("user 1 file 1: match"), std::string::npos);
}

TEST(Cli, SimulateWritesTranscript) {
  const auto path = (temp_dir() / "session.bin").string();
  const auto a = run({"simulate", "dual", "--demands", "1,1", "--seed", "3", "--out", path});
  ASSERT_EQ(a.code, cli::kOk);
  std::ifstream in(path, std::ios::binary);
  const std::string first((std::istreambuf_iterator<char>(in)), {});
  run({"simulate", "dual", "--demands", "1,1", "--seed", "3", "--out", path});
  std::ifstream again(path, std::ios::binary);
  const std::string second((std::istreambuf_iterator<char>(again)), {});
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, second);
}

TEST(Cli, SearchWritesDescriptor) {
  const auto path = (temp_dir() / "found.json").string();
  const auto r = run({"search", "--target", "1/3,4/3", "--out", path});
  EXPECT_EQ(r.code, cli::kOk);
  const auto m = load_descriptor(path);
  EXPECT_EQ(m.memory(), Rational(1, 3));
  EXPECT_EQ(m.rate(), Rational(4, 3));
  // The descriptor is itself a valid scheme name.
  EXPECT_EQ(run({"verify", path}).code, cli::kOk);
}

TEST(Cli, SearchRegenIsIdentical) {
  const auto r = run({"search", "--regen"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("identical"), std::string::npos);
}

TEST(Cli, SearchBudgetExhausted) {
  const auto r = run({"search", "--target", "2/3,1/3", "--budget", "20"});
  EXPECT_EQ(r.code, cli::kBudget);
}

TEST(Cli, SearchExhaustiveEmpty) {
  const auto r = run({"search", "--target", "1/3,2/3", "--exhaustive"});
  EXPECT_EQ(r.code, cli::kCheckFailed);
}
