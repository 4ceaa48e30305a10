#include <gtest/gtest.h>

#include "cachepriv/demand.hpp"
#include "cachepriv/scheme.hpp"

using namespace cachepriv;

TEST(CyclicShift, RightShift) {
  EXPECT_EQ(cyclic_shift({0, 1, 2}, 1), (std::vector<FileIndex>{2, 0, 1}));
  EXPECT_EQ(cyclic_shift({0, 1, 2}, 2), (std::vector<FileIndex>{1, 2, 0}));
  EXPECT_EQ(cyclic_shift({0, 1, 2}, 3), (std::vector<FileIndex>{0, 1, 2}));
  EXPECT_EQ(cyclic_shift({0, 1, 2}, -1), (std::vector<FileIndex>{1, 2, 0}));
  EXPECT_EQ(cyclic_shift({0, 1}, 1), (std::vector<FileIndex>{1, 0}));
}

TEST(Expansion, KeyMinusDemand) {
  EXPECT_EQ(mod_sub_vec({0, 1, 2}, {1, 1, 0}, 3), (std::vector<FileIndex>{2, 0, 2}));
  // N = 2: subtraction is XOR.
  for (Key s = 0; s < 2; ++s) {
    for (FileIndex d = 0; d < 2; ++d) EXPECT_EQ(mod_sub_vec({s}, {d}, 2)[0], s ^ d);
  }
  EXPECT_EQ(expand_shifts({1, 0}, 2), (DemandVector{1, 0, 0, 1}));
  EXPECT_EQ(expand_demand({1, 0}, {0, 0}, 2), (DemandVector{1, 0, 0, 1}));
}

TEST(Expansion, UserReadsOwnDemandAtKeyPosition) {
  // Virtual user k*N + S_k demands D_k in the expanded vector.
  for (const auto& d : all_demands(3, 2)) {
    for (Key s0 = 0; s0 < 3; ++s0) {
      for (Key s1 = 0; s1 < 3; ++s1) {
        const auto e = expand_demand(d, {s0, s1}, 3);
        EXPECT_EQ(e[0 * 3 + s0], d[0]);
        EXPECT_EQ(e[1 * 3 + s1], d[1]);
      }
    }
  }
}

TEST(RestrictedSet, TwoByTwoOrder) {
  const auto rs = restricted_demand_set(2, 2);
  EXPECT_EQ(rs.kind, DemandSetKind::kRestricted);
  EXPECT_EQ(rs.label(), "D_RS");
  ASSERT_EQ(rs.members.size(), 4u);
  EXPECT_EQ(rs.members[0], (DemandVector{0, 1, 0, 1}));
  EXPECT_EQ(rs.members[1], (DemandVector{0, 1, 1, 0}));
  EXPECT_EQ(rs.members[2], (DemandVector{1, 0, 0, 1}));
  EXPECT_EQ(rs.members[3], (DemandVector{1, 0, 1, 0}));
  EXPECT_EQ(rs.shifts[2], (std::vector<FileIndex>{1, 0}));
  EXPECT_TRUE(rs.contains({1, 0, 1, 0}));
  EXPECT_FALSE(rs.contains({0, 0, 1, 1}));
  EXPECT_EQ(rs.index_of({0, 1, 1, 0}), 1u);
  EXPECT_THROW(rs.index_of({0, 0, 0, 0}), std::out_of_range);
}

TEST(RestrictedSet, SizeAndType) {
  const auto rs = restricted_demand_set(3, 2);
  EXPECT_EQ(rs.members.size(), 9u);
  for (const auto& d : rs.members) EXPECT_EQ(demand_type(d, 3), (std::vector<std::size_t>{2, 2, 2}));
}

TEST(TypeClass, Multinomial) {
  const auto tc = type_class({2, 2});
  EXPECT_EQ(tc.members.size(), 6u);  // 4! / (2! 2!)
  EXPECT_EQ(tc.n_users, 4u);
  for (const auto& d : restricted_demand_set(2, 2).members) EXPECT_TRUE(tc.contains(d));
  EXPECT_EQ(type_class({1, 2, 0}).members.size(), 3u);
  EXPECT_EQ(full_demand_set(2, 3).members.size(), 8u);
  EXPECT_EQ(full_demand_set(2, 3).label(), "full");
}
