#include "support.hpp"
#include "wgb/pyramid.hpp"

#include <gtest/gtest.h>

using namespace wgb;
using wgb::testing::R;

TEST(Pyramid, ThreeRowGeometry) {
  Pyramid P = build_pyramid({2, 3, 4});
  EXPECT_EQ(P.N, 9);
  EXPECT_EQ(P.n, 3);
  EXPECT_EQ(P.ell, 4);
  EXPECT_EQ(P.q, (std::vector<int>{3, 3, 2, 1}));
  EXPECT_EQ(P.row[5], 2);
  EXPECT_EQ(P.col[5], 3);
}

TEST(Pyramid, SingletonAndRowMajorNumbering) {
  Pyramid P1 = build_pyramid({1});
  EXPECT_EQ(P1.N, 1);
  EXPECT_EQ(P1.ell, 1);
  EXPECT_EQ(P1.q, (std::vector<int>{1}));
  Pyramid P = build_pyramid({1, 2});
  EXPECT_EQ(std::make_pair(P.row[1], P.col[1]), std::make_pair(1, 1));
  EXPECT_EQ(std::make_pair(P.row[2], P.col[2]), std::make_pair(2, 1));
  EXPECT_EQ(std::make_pair(P.row[3], P.col[3]), std::make_pair(2, 2));
}

TEST(Pyramid, RejectsBadPartitions) {
  EXPECT_THROW(build_pyramid({}), ValidationError);
  EXPECT_THROW(build_pyramid({2, 1}), ValidationError);
  EXPECT_THROW(build_pyramid({0, 1}), ValidationError);
  EXPECT_THROW(build_pyramid({17}), ValidationError);
  EXPECT_THROW(parse_partition("1,x"), ValidationError);
  EXPECT_EQ(parse_partition("1,2,4"), (std::vector<int>{1, 2, 4}));
}

TEST(Pyramid, NilpotentElement) {
  LieElt e;
  for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}, {8, 9}}) e.add(i, j, 1);
  EXPECT_EQ(nilpotent_e(build_pyramid({2, 3, 4})), e);
  EXPECT_TRUE(nilpotent_e(build_pyramid({1, 1})).is_zero());
  EXPECT_EQ(nilpotent_e(build_pyramid({1, 2})), LieElt::unit(2, 3));
}

TEST(Grading, Degrees) {
  Pyramid P = build_pyramid({1, 2});
  EXPECT_EQ(good_degree(P, 2, 3), 2);
  EXPECT_EQ(good_degree(P, 3, 1), -2);
  EXPECT_EQ(good_degree(build_pyramid({2, 3, 4}), 1, 9), 6);
}

TEST(Grading, BracketIsAdditive) {
  for (const auto& parts : partitions_of(5)) {
    Pyramid P = build_pyramid(parts);
    for (int a = 1; a <= P.N; ++a)
      for (int b = 1; b <= P.N; ++b)
        for (int c = 1; c <= P.N; ++c) {
          LieElt br = bracket(LieElt::unit(a, b), LieElt::unit(b, c));
          if (br.coeffs.size() == 1) {
            EXPECT_EQ(good_degree(P, a, c), good_degree(P, a, b) + good_degree(P, b, c));
          }
        }
  }
}

TEST(Character, Values) {
  Pyramid P = build_pyramid({1, 2});
  EXPECT_EQ(chi(P, LieElt::unit(3, 2)), 1);
  EXPECT_EQ(chi(P, LieElt::unit(1, 2)), 0);
  LieElt x = LieElt::unit(2, 1);
  x.add(4, 3, 1);
  EXPECT_EQ(chi(build_pyramid({2, 3, 4}), x), 2);
}

TEST(Character, VanishesOffDegreeMinusTwoAndOnBracketsOfM) {
  for (const auto& parts : partitions_of(5)) {
    Pyramid P = build_pyramid(parts);
    for (int i = 1; i <= P.N; ++i)
      for (int j = 1; j <= P.N; ++j) {
        if (good_degree(P, i, j) != -2) {
          EXPECT_EQ(chi(P, LieElt::unit(i, j)), 0);
        }
        if (!P.in_m(i, j)) continue;
        for (int k = 1; k <= P.N; ++k)
          for (int l = 1; l <= P.N; ++l)
            if (P.in_m(k, l)) {
              EXPECT_EQ(chi(P, bracket(LieElt::unit(i, j), LieElt::unit(k, l))), 0);
            }
      }
  }
}

TEST(Weights, RestrictedRoots) {
  Pyramid P = build_pyramid({1, 2});
  EXPECT_EQ(restricted_weight(P, 3, 1), (RestrictedWeight{R(-1), R(1)}));
  EXPECT_EQ(restricted_weight(P, 2, 3), (RestrictedWeight{R(0), R(0)}));
  EXPECT_EQ(restricted_weight(build_pyramid({2, 3, 4}), 1, 6), (RestrictedWeight{R(1), R(0), R(-1)}));
}

TEST(Weights, SpecialWeightsSmallCases) {
  auto s2 = special_weights(build_pyramid({2}));
  EXPECT_EQ(s2.eta, (TWeight{R(-1), R(0)}));
  EXPECT_EQ(s2.delta, (TWeight{R(1), R(0)}));
  EXPECT_EQ(s2.epsilon, (TWeight{R(-1), R(0)}));
  EXPECT_EQ(s2.gamma, (TWeight{R(0), R(0)}));
  auto s12 = special_weights(build_pyramid({1, 2}));
  EXPECT_EQ(s12.eta, (TWeight{R(-1), R(-1), R(1)}));
  EXPECT_EQ(s12.delta, (TWeight{R(0), R(1), R(0)}));
  EXPECT_EQ(s12.epsilon, (TWeight{R(0), R(-2), R(-1)}));
  EXPECT_EQ(s12.gamma, (TWeight{R(-1), R(0), R(1)}));
}

TEST(Weights, ConventionInvariants) {
  for (int N = 1; N <= 7; ++N)
    for (const auto& parts : partitions_of(N)) {
      Pyramid P = build_pyramid(parts);
      auto s = special_weights(P);
      for (int j = 1; j <= N; ++j) {
        EXPECT_EQ(s.delta[j - 1] + s.eta[j - 1], s.gamma[j - 1]) << P.label();
        EXPECT_EQ(s.epsilon[j - 1] + s.delta[j - 1], 1 - P.row[j]) << P.label();
      }
    }
}

TEST(Weights, Dominance) {
  RestrictedWeight lam{R(2), R(0)};
  EXPECT_TRUE(dominance_leq(lam, lam));
  EXPECT_TRUE(dominance_leq({R(1), R(1)}, lam));
  EXPECT_FALSE(dominance_leq({R(3), R(-1)}, lam));
  EXPECT_FALSE(dominance_leq({R(3, 2), R(1, 2)}, lam));
}

TEST(JordanType, MatchesPartition) {
  for (int N = 1; N <= 8; ++N)
    for (const auto& parts : partitions_of(N)) {
      Pyramid P = build_pyramid(parts);
      auto jt = jordan_type(nilpotent_e(P), N);
      std::vector<int> want = parts;
      std::sort(want.begin(), want.end());
      std::sort(jt.begin(), jt.end());
      EXPECT_EQ(jt, want) << P.label();
    }
}

TEST(Partitions, Counts) {
  std::vector<std::size_t> p = {1, 2, 3, 5, 7, 11, 15, 22, 30};
  for (int N = 1; N <= 9; ++N) EXPECT_EQ(partitions_of(N).size(), p[N - 1]);
}
