#include <map>

#include <gtest/gtest.h>

#include "cachepriv/lift.hpp"
#include "cachepriv/schemes.hpp"
#include "cachepriv/session.hpp"
#include "cachepriv/verifier.hpp"

using namespace cachepriv;

TEST(Session, LowMemoryLiftShape) {
  const auto s = example1_scheme();
  const auto t = simulate_session(*s, {0, 1}, 7);
  ASSERT_EQ(t.placements.size(), 2u);
  EXPECT_EQ(t.delivery.header.size(), 2u);
  // Four symbols of 8 bits.
  EXPECT_EQ(t.delivery.payload.size(), 32u);
  ASSERT_EQ(t.reports.size(), 2u);
  EXPECT_TRUE(t.all_match());
  EXPECT_EQ(t.reports[0].file, 0u);
  EXPECT_EQ(t.reports[1].file, 1u);
  for (const auto& p : t.placements) EXPECT_EQ(p.cache.size(), 8u);
}

TEST(Session, SizesAgreeWithMeasuredRates) {
  for (const auto& s : {example1_scheme(), dual_example_scheme(), theorem1_scheme(3, 2, Rational(1))}) {
    const auto& p = s->params();
    const std::size_t width = 4;
    const auto r = measure_rates(*s, width);
    const std::int64_t file_bits = static_cast<std::int64_t>(p.subpacketization * width);
    DemandVector d(p.n_users, 0);
    const auto t = simulate_session(*s, d, 3, width);
    EXPECT_EQ(Rational(static_cast<std::int64_t>(t.placements[0].cache.size()), file_bits), r.memory);
    EXPECT_EQ(Rational(static_cast<std::int64_t>(t.delivery.payload.size()), file_bits), r.rate);
    EXPECT_EQ(t.delivery.header.size(), r.header_bits);
    EXPECT_TRUE(t.all_match());
  }
}

TEST(Session, FullCacheBaselineSendsNothing) {
  const auto t = simulate_session(*baseline_uncoded(2, 2, Rational(2)), {1, 0}, 5);
  EXPECT_EQ(t.delivery.payload.size(), 0u);
  EXPECT_TRUE(t.all_match());
}

TEST(Session, SameDemandReadsSameSlot) {
  const auto s = theorem1_scheme(3, 2, Rational(0));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = simulate_session(*s, {2, 2}, seed);
    EXPECT_TRUE(t.all_match());
    EXPECT_EQ(t.reports[0].decoded, t.reports[1].decoded);
  }
}

TEST(Session, Deterministic) {
  const auto s = example1_scheme();
  const auto a = simulate_session(*s, {1, 1}, 11);
  const auto b = simulate_session(*s, {1, 1}, 11);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.encode(), b.encode());
  EXPECT_NE(a.encode(), simulate_session(*s, {1, 1}, 12).encode());
}

TEST(Session, WireRoundTrip) {
  const auto t = simulate_session(*dual_example_scheme(), {0, 1}, 4);
  const auto bytes = t.encode();
  EXPECT_EQ(SessionTranscript::decode(bytes), t);
  EXPECT_EQ(SessionTranscript::decode(bytes).encode(), bytes);
}

TEST(Session, MalformedWireIsRejected) {
  const auto bytes = simulate_session(*example1_scheme(), {0, 0}, 1).encode();
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(SessionTranscript::decode(truncated), std::invalid_argument);
  auto bad_type = bytes;
  bad_type[0] = 0x7F;
  EXPECT_THROW(SessionTranscript::decode(bad_type), std::invalid_argument);
  EXPECT_THROW(SessionTranscript::decode({}), std::invalid_argument);

  // Report frame before the delivery frame.
  wire::Bytes reordered;
  auto frames = wire::decode_frames(bytes);
  std::swap(frames[2], frames[3]);
  for (const auto& f : frames) wire::append_frame(reordered, f);
  EXPECT_THROW(SessionTranscript::decode(reordered), std::invalid_argument);
}

TEST(Session, RejectsBadInput) {
  const auto s = example1_scheme();
  const auto files = FileStore::from_index(2, 3, 1, 0);
  EXPECT_THROW(run_session(*s, files, {0, 2}, {0, 0}, {0}), std::invalid_argument);
  EXPECT_THROW(run_session(*s, files, {0, 1}, {0}, {0}), std::invalid_argument);
  EXPECT_THROW(simulate_session(*s, {0}, 1), std::invalid_argument);
}

TEST(Session, UserViewMatchesVerifierSerialization) {
  const auto t = simulate_session(*example1_scheme(), {1, 0}, 9);
  const DeliveryMessage m{t.delivery.payload, t.delivery.header};
  for (std::size_t k = 0; k < 2; ++k) {
    const CacheContent c{t.placements[k].cache, t.placements[k].key};
    EXPECT_EQ(user_view(t, k), serialize_view(c, m, t.reports[k].file));
  }
}

TEST(Session, TranscriptViewsReproducePrivacyTable) {
  // Every realization run through the wire protocol; the per-user view
  // counts must equal the verifier's joint table cell for cell.
  const auto s = example1_scheme();
  const auto& p = s->params();
  const auto space = s->randomness(1);
  const std::uint64_t n_random = space.cardinality();
  const std::uint64_t keys = s->key_alphabet();
  for (std::size_t user = 0; user < 2; ++user) {
    std::map<std::string, std::vector<std::uint64_t>> counts;
    for (std::uint64_t w = 0; w < (1u << (p.n_files * p.subpacketization)); ++w) {
      const auto files = FileStore::from_index(p.n_files, p.subpacketization, 1, w);
      for (FileIndex d0 = 0; d0 < 2; ++d0) {
        for (FileIndex d1 = 0; d1 < 2; ++d1) {
          for (Key s0 = 0; s0 < keys; ++s0) {
            for (Key s1 = 0; s1 < keys; ++s1) {
              for (std::uint64_t r = 0; r < n_random; ++r) {
                const auto t = run_session(*s, files, {d0, d1}, {s0, s1}, space.unrank(r));
                ASSERT_TRUE(t.all_match());
                auto& cell = counts[user_view(t, user)];
                cell.resize(2);
                ++cell[user == 0 ? d1 : d0];
              }
            }
          }
        }
      }
    }
    const auto table = privacy_table(*s, user, VerifyOptions{});
    ASSERT_EQ(table.cells.size(), counts.size());
    for (const auto& [obs, c] : counts) {
      ASSERT_TRUE(table.cells.count(obs));
      EXPECT_EQ(table.cells.at(obs), c);
      // Exact independence: both values of the other demand occur equally.
      EXPECT_EQ(c[0], c[1]);
    }
  }
}
