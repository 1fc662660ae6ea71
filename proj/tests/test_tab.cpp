#include "support.hpp"
#include "wgb/tableau.hpp"

#include <gtest/gtest.h>

using namespace wgb;
using wgb::testing::R;

namespace {

/// Textbook row insertion on integers, first row on top; returns row lengths.
std::vector<int> textbook_rs_shape(const std::vector<long>& seq) {
  std::vector<std::vector<long>> rows;
  for (long x : seq) {
    for (std::size_t r = 0;; ++r) {
      if (r == rows.size()) {
        rows.push_back({x});
        break;
      }
      auto it = std::upper_bound(rows[r].begin(), rows[r].end(), x);
      if (it == rows[r].end()) {
        rows[r].push_back(x);
        break;
      }
      std::swap(x, *it);
    }
  }
  std::vector<int> shape;
  for (const auto& r : rows) shape.push_back(static_cast<int>(r.size()));
  return shape;
}

Tableau T(const std::vector<int>& parts, const std::string& text) { return parse_tableau(build_pyramid(parts), text); }

}  // namespace

TEST(Tableau, WeightBijection) {
  Pyramid P = build_pyramid({1, 2});
  Tableau zero = tableau_from_weight(P, TWeight(3, Rational(0)));
  EXPECT_EQ(format_tableau(zero), "0;0,0");
  Tableau A = tableau_from_weight(P, {R(3), R(1), R(2)});
  EXPECT_EQ(format_tableau(A), "3;1,2");
  EXPECT_EQ(weight_from_tableau(A), (TWeight{R(3), R(1), R(2)}));
  EXPECT_EQ(format_tableau(T({1, 2}, "-1/2;4/6,2")), "-1/2;2/3,2");
}

TEST(Tableau, ParseErrors) {
  EXPECT_THROW(T({1, 2}, "3;1"), ValidationError);
  EXPECT_THROW(T({1, 2}, "3"), ValidationError);
  EXPECT_THROW(T({1, 2}, "3;1,x"), ValidationError);
  EXPECT_THROW(T({1, 2}, "3;1,2/0"), ValidationError);
}

TEST(Tableau, ColumnStrict) {
  EXPECT_TRUE(is_column_strict(T({1, 2}, "3;1,2")));
  EXPECT_FALSE(is_column_strict(T({1, 2}, "1;1,2")));
  EXPECT_FALSE(is_column_strict(T({1, 2}, "3/2;1,2")));
}

TEST(Tableau, RowEquivalentSearch) {
  auto r = has_column_strict_rep(T({1, 2}, "2;0,1"));
  EXPECT_TRUE(r.found);
  EXPECT_TRUE(is_column_strict(r.witness));
  EXPECT_FALSE(has_column_strict_rep(T({1, 2}, "0;1,2")).found);
  EXPECT_TRUE(has_column_strict_rep(T({4}, "5,1/2,-3,0")).found);
}

TEST(Tableau, SearchMatchesExhaustiveOnRandomFillings) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> num(-2, 4), den(1, 2);
  for (int N = 2; N <= 7; ++N)
    for (const auto& parts : partitions_of(N)) {
      Pyramid P = build_pyramid(parts);
      for (int trial = 0; trial < 20; ++trial) {
        Tableau A{P, {}};
        for (int j = 0; j < N; ++j) A.entries.push_back(make_rational(num(rng), den(rng)));
        EXPECT_EQ(has_column_strict_rep(A).found, has_column_strict_rep_exhaustive(A)) << format_tableau(A);
      }
    }
}

TEST(RobinsonSchensted, Examples) {
  auto rows = rs_insert({R(3), R(1), R(2)});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<Rational>{R(1), R(2)}));
  EXPECT_EQ(rows[1], (std::vector<Rational>{R(3)}));
  EXPECT_EQ(rs_shape({R(3), R(1), R(2)}), (std::vector<int>{1, 2}));
  EXPECT_EQ(rs_shape({R(1), R(2), R(3)}), (std::vector<int>{3}));
  auto mixed = rs_insert({R(1), R(3, 2), R(2)});
  ASSERT_EQ(mixed.size(), 1u);
  EXPECT_EQ(mixed[0], (std::vector<Rational>{R(1), R(3, 2), R(2)}));
}

TEST(RobinsonSchensted, MatchesTextbookOnIntegers) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    int len = std::uniform_int_distribution<int>(1, 9)(rng);
    std::vector<long> seq;
    std::vector<Rational> q;
    for (int k = 0; k < len; ++k) {
      seq.push_back(std::uniform_int_distribution<long>(-3, 5)(rng));
      q.push_back(Rational(seq.back()));
    }
    auto want = textbook_rs_shape(seq);
    std::reverse(want.begin(), want.end());
    EXPECT_EQ(rs_shape(q), want);
  }
}

TEST(RobinsonSchensted, CosetsDoNotInteract) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> seq, ints, halves;
    for (int k = 0; k < 8; ++k) {
      long v = std::uniform_int_distribution<long>(0, 4)(rng);
      if (std::uniform_int_distribution<int>(0, 1)(rng)) {
        seq.push_back(Rational(v));
        ints.push_back(Rational(v));
      } else {
        seq.push_back(make_rational(2 * v + 1, 2));
        halves.push_back(make_rational(2 * v + 1, 2));
      }
    }
    // Row lengths add up coset by coset, bottom rows aligned.
    auto a = rs_insert(ints), b = rs_insert(halves), all = rs_insert(seq);
    ASSERT_EQ(all.size(), std::max(a.size(), b.size()));
    for (std::size_t r = 0; r < all.size(); ++r)
      EXPECT_EQ(all[r].size(), (r < a.size() ? a[r].size() : 0) + (r < b.size() ? b[r].size() : 0));
  }
}

TEST(Classifier, Examples) {
  EXPECT_EQ(classify(T({1, 2}, "3;1,2")), Verdict::finite);
  EXPECT_EQ(classify(T({1, 2}, "1/2;0,1")), Verdict::infinite);
  for (int N = 1; N <= 5; ++N) {
    Tableau A{build_pyramid({N}), {}};
    for (int j = 0; j < N; ++j) A.entries.push_back(make_rational(j * 7 - 3, j + 1));
    EXPECT_EQ(classify(A), Verdict::finite);
  }
  auto fin = cls_crosscheck(T({1, 2}, "2;0,1"));
  EXPECT_EQ(fin.shape, (std::vector<int>{1, 2}));
  EXPECT_EQ(fin.verdict, Verdict::finite);
  EXPECT_TRUE(fin.agree());
  auto inf = cls_crosscheck(T({1, 2}, "0;1,2"));
  EXPECT_NE(inf.shape, (std::vector<int>{1, 2}));
  EXPECT_EQ(inf.verdict, Verdict::infinite);
  EXPECT_TRUE(inf.agree());
}

TEST(Classifier, InvariantUnderShiftAndRowPermutation) {
  std::mt19937_64 rng(41);
  for (int N = 2; N <= 6; ++N)
    for (const auto& parts : partitions_of(N)) {
      Pyramid P = build_pyramid(parts);
      for (int trial = 0; trial < 10; ++trial) {
        Tableau A{P, {}};
        for (int j = 0; j < N; ++j) A.entries.push_back(make_rational(std::uniform_int_distribution<int>(-2, 3)(rng), 1 + trial % 2));
        Verdict v = classify(A);
        Tableau B = A;
        Rational c = make_rational(trial - 4, 3);
        for (auto& x : B.entries) x += c;
        EXPECT_EQ(classify(B), v);
        Tableau Cp = A;
        for (int r = 1; r <= P.n; ++r) {
          std::vector<Rational> row = A.row_entries(r);
          std::shuffle(row.begin(), row.end(), rng);
          for (int k = 1; k <= parts[r - 1]; ++k) Cp.entries[P.box_at(r, k) - 1] = row[k - 1];
        }
        EXPECT_EQ(classify(Cp), v);
      }
    }
}
