#include <cstdlib>

#include <gtest/gtest.h>

#include "cachepriv/lift.hpp"
#include "cachepriv/schemes.hpp"
#include "cachepriv/verifier.hpp"
#include "oracle.hpp"

using namespace cachepriv;

namespace {

VerifyOptions with(std::size_t workers, std::uint64_t stride, std::size_t width = 1) {
  VerifyOptions o;
  o.workers = workers;
  o.order_stride = stride;
  o.width = width;
  return o;
}

// The N > K general scheme with its private randomness pinned to zero:
// filler is all-zero and slot order deterministic, which leaks.
class PinnedRandomness final : public Scheme {
 public:
  PinnedRandomness() : inner_(theorem1_scheme(3, 2, Rational(0))) {}
  const SchemeParams& params() const override { return inner_->params(); }
  PrivacyClass privacy() const override { return PrivacyClass::kPrivate; }
  std::uint64_t key_alphabet() const override { return inner_->key_alphabet(); }
  std::size_t header_bits() const override { return inner_->header_bits(); }
  CacheContent place(std::size_t u, Key k, const FileStore& f) const override { return inner_->place(u, k, f); }
  DeliveryMessage deliver(const FileStore& f, const DemandVector& d, std::span<const Key> k,
                          const PrivateRandomness&) const override {
    return inner_->deliver(f, d, k, PrivateRandomness(inner_->randomness(f.width()).radices.size(), 0));
  }
  BitVector decode(std::size_t u, FileIndex d, Key k, const DeliveryMessage& m,
                   const CacheContent& c) const override {
    return inner_->decode(u, d, k, m, c);
  }

 private:
  SchemePtr inner_;
};

}  // namespace

TEST(AtomSpace, Sizes) {
  const auto a = AtomSpace::of(*example1_scheme(), 1);
  EXPECT_EQ(a.file_count, 64u);
  EXPECT_EQ(a.demands.size(), 4u);
  EXPECT_EQ(a.key_count, 4u);
  EXPECT_EQ(a.randomness_count, 1u);
  EXPECT_EQ(a.total, 1024u);
  const auto b = AtomSpace::of(*theorem1_scheme(3, 2, Rational(0)), 1);
  EXPECT_EQ(b.total, 8u * 9u * 4u * 8u);
  const auto big = AtomSpace::of(*example1_scheme(), 40);
  EXPECT_EQ(big.total, UINT64_MAX);
}

TEST(AtomSpace, AtomsAreDistinct) {
  const auto s = theorem1_scheme(3, 2, Rational(0));
  const auto space = AtomSpace::of(*s, 1);
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < space.total; ++i) seen.insert(describe(*s, space, atom_at(*s, space, i)));
  EXPECT_EQ(seen.size(), space.total);
}

TEST(Verifier, BudgetExceeded) {
  VerifyOptions o;
  o.budget = 1000;
  try {
    check_decodability(*example1_scheme(), o);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), 1024u);
    EXPECT_EQ(e.budget(), 1000u);
  }
  o.budget = 1024;
  EXPECT_TRUE(check_decodability(*example1_scheme(), o).passed);
}

TEST(Verifier, BudgetFromEnvironment) {
  ::setenv("CACHEPRIV_BUDGET", "77", 1);
  EXPECT_EQ(default_options().budget, 77u);
  ::setenv("CACHEPRIV_BUDGET", "junk", 1);
  EXPECT_EQ(default_options().budget, kDefaultBudget);
  ::unsetenv("CACHEPRIV_BUDGET");
  EXPECT_EQ(default_options().budget, kDefaultBudget);
}

TEST(Verifier, StrideMustBeCoprime) {
  EXPECT_THROW(check_decodability(*example1_scheme(), with(1, 2)), std::invalid_argument);
  EXPECT_NO_THROW(check_decodability(*example1_scheme(), with(1, 3)));
}

TEST(Verifier, LowMemoryLiftPasses) {
  const auto s = example1_scheme();
  const auto d = check_decodability(*s, VerifyOptions{});
  EXPECT_TRUE(d.passed);
  EXPECT_EQ(d.atoms, 1024u);
  EXPECT_EQ(d.cases, 2048u);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto p = check_privacy(*s, k, VerifyOptions{});
    EXPECT_TRUE(p.passed);
    EXPECT_EQ(p.mutual_information_bits, 0.0);
  }
  EXPECT_TRUE(check_lemma1(*s, VerifyOptions{}).passed);
}

TEST(Verifier, PrivacyAtWidthTwo) {
  EXPECT_TRUE(check_privacy(*example1_scheme(), 0, with(1, 1, 2)).passed);
  EXPECT_TRUE(check_privacy(*dual_example_scheme(), 1, with(1, 1, 2)).passed);
}

TEST(Verifier, WorkerAndStrideInvariance) {
  for (const auto& s : {example1_scheme(), theorem1_scheme(3, 2, Rational(0)),
                        with_plaintext_demand_header(baseline_uncoded(2, 2, Rational(1)))}) {
    const auto space = AtomSpace::of(*s, 1);
    std::uint64_t stride = 7;
    while (std::gcd(stride, space.total) != 1) stride += 2;
    const auto ref = privacy_table(*s, 0, with(1, 1));
    const auto ref_verdict = check_privacy(*s, 0, with(1, 1));
    for (const auto& opts : {with(3, 1), with(1, stride), with(4, stride)}) {
      const auto t = privacy_table(*s, 0, opts);
      EXPECT_EQ(t.cells, ref.cells);
      EXPECT_EQ(t.witness, ref.witness);
      EXPECT_EQ(t.total, ref.total);
      const auto v = check_privacy(*s, 0, opts);
      EXPECT_EQ(v.passed, ref_verdict.passed);
      EXPECT_EQ(v.counterexample, ref_verdict.counterexample);
      EXPECT_EQ(check_decodability(*s, opts).passed, check_decodability(*s, with(1, 1)).passed);
    }
  }
}

TEST(Verifier, MergeIsOrderIndependent) {
  JointDistribution a;
  a.rest_values = 2;
  a.rest_marginal.assign(2, 0);
  JointDistribution b = a;
  JointDistribution c = a;
  a.add("x", 0, 5);
  a.add("y", 1, 2);
  b.add("x", 1, 3);
  c.add("y", 0, 9);
  JointDistribution ab = a;
  ab.merge(b);
  ab.merge(c);
  JointDistribution cb = c;
  cb.merge(b);
  cb.merge(a);
  EXPECT_EQ(ab.cells, cb.cells);
  EXPECT_EQ(ab.witness, cb.witness);
  EXPECT_EQ(ab.witness.at("x"), 3u);
  EXPECT_EQ(ab.total, 4u);
}

TEST(Verifier, IntegerIdentityAgreesWithMutualInformation) {
  // Independent exactly when MI is zero; cross-checked against the test oracle.
  std::vector<SchemePtr> schemes = {
      example1_scheme(), dual_example_scheme(), theorem1_scheme(3, 2, Rational(0)),
      theorem1_scheme(2, 3, Rational(1)), with_plaintext_demand_header(baseline_uncoded(2, 2, Rational(1))),
      with_plaintext_demand_header(theorem1_scheme(3, 2, Rational(0))), std::make_shared<PinnedRandomness>()};
  for (const auto& s : schemes) {
    for (std::size_t k = 0; k < s->params().n_users; ++k) {
      const auto v = check_privacy(*s, k, VerifyOptions{});
      const auto o = oracle::privacy(*s, k, 1);
      EXPECT_EQ(v.passed, o.independent) << s->params().name;
      EXPECT_NEAR(v.mutual_information_bits, o.mutual_information, 1e-9) << s->params().name;
      EXPECT_EQ(v.passed, v.mutual_information_bits < 1e-12) << s->params().name;
    }
  }
}

TEST(Verifier, NegativeControl) {
  const auto s = with_plaintext_demand_header(baseline_uncoded(2, 2, Rational(1)));
  const auto v = check_privacy(*s, 0, VerifyOptions{});
  EXPECT_FALSE(v.passed);
  ASSERT_TRUE(v.counterexample.has_value());
  EXPECT_NE(v.counterexample->find("D=("), std::string::npos);
  EXPECT_NEAR(v.mutual_information_bits, 1.0, 1e-12);
  EXPECT_FALSE(check_lemma1(*s, VerifyOptions{}).passed);
  EXPECT_TRUE(check_decodability(*s, VerifyOptions{}).passed);
}

TEST(Verifier, DecodabilityCatchesWrongDecoder) {
  class WrongDecode final : public Scheme {
   public:
    WrongDecode() : inner_(theorem1_scheme(2, 2, Rational(1))) {}
    const SchemeParams& params() const override { return inner_->params(); }
    PrivacyClass privacy() const override { return PrivacyClass::kPrivate; }
    std::size_t header_bits() const override { return 0; }
    CacheContent place(std::size_t u, Key k, const FileStore& f) const override { return inner_->place(u, k, f); }
    DeliveryMessage deliver(const FileStore& f, const DemandVector& d, std::span<const Key> k,
                            const PrivateRandomness& p) const override {
      return inner_->deliver(f, d, k, p);
    }
    BitVector decode(std::size_t u, FileIndex d, Key k, const DeliveryMessage& m,
                     const CacheContent& c) const override {
      auto out = inner_->decode(u, d, k, m, c);
      if (u == 1 && d == 1) out.flip(0);
      return out;
    }

   private:
    SchemePtr inner_;
  };
  const WrongDecode s;
  const auto v = check_decodability(s, VerifyOptions{});
  EXPECT_FALSE(v.passed);
  ASSERT_TRUE(v.counterexample.has_value());
  EXPECT_NE(v.counterexample->find("user 1"), std::string::npos);
  EXPECT_EQ(v.passed, oracle::decodability(s, 1).failures == 0);
}

TEST(Verifier, PrivacyRequiresPrivateScheme) {
  EXPECT_THROW(check_privacy(*baseline_uncoded(2, 2, Rational(1)), 0, VerifyOptions{}), std::invalid_argument);
  EXPECT_THROW(check_lemma1(*theorem1_scheme(3, 2, Rational(0)), VerifyOptions{}), std::invalid_argument);
}

TEST(Verifier, PinnedRandomnessLeaks) {
  const PinnedRandomness s;
  EXPECT_TRUE(check_decodability(s, VerifyOptions{}).passed);
  const auto v = check_privacy(s, 0, VerifyOptions{});
  EXPECT_FALSE(v.passed);
  EXPECT_GT(v.mutual_information_bits, 0.0);
}

TEST(Verifier, MeasureRates) {
  const auto e = measure_rates(*example1_scheme(), 1);
  EXPECT_EQ(e.memory, Rational(1, 3));
  EXPECT_EQ(e.rate, Rational(4, 3));
  EXPECT_EQ(e.header_bits, 2u);
  const auto d = measure_rates(*dual_example_scheme(), 3);
  EXPECT_EQ(d.memory, Rational(4, 3));
  EXPECT_EQ(d.rate, Rational(1, 3));
}

TEST(Verifier, VerifyAllRunsEveryCheck) {
  EXPECT_EQ(verify_all(*example1_scheme(), VerifyOptions{}).size(), 4u);
  EXPECT_EQ(verify_all(*theorem1_scheme(3, 2, Rational(0)), VerifyOptions{}).size(), 3u);
  EXPECT_EQ(verify_all(*baseline_uncoded(2, 2, Rational(1)), VerifyOptions{}).size(), 1u);
}

TEST(Verdict, Json) {
  Verdict v;
  v.check = "decodability";
  v.atoms = 3;
  EXPECT_EQ(to_json(v),
            R"({"atoms":3,"cases":0,"check":"decodability","counterexample":null,"mutual_information_bits":0.0,"passed":true})");
  v.fail("bad \"thing\"");
  v.fail("second");
  EXPECT_EQ(*v.counterexample, "bad \"thing\"");
  EXPECT_NE(to_json(v).find(R"("counterexample":"bad \"thing\"")"), std::string::npos);
}
