#include "support.hpp"
#include "wgb/walg.hpp"

#include <gtest/gtest.h>

using namespace wgb;
using namespace wgb::testing;

namespace {

int max_kazhdan(const Pyramid& P, const PbwElt& u) {
  int k = -1;
  for (const auto& [m, c] : u.terms()) k = std::max(k, mono_kazhdan(P, m));
  return k;
}

int min_sum(const std::vector<int>& p) {
  int s = 0;
  for (int a : p)
    for (int b : p) s += std::min(a, b);
  return s;
}

}  // namespace

TEST(Membership, Examples) {
  Pyramid P = build_pyramid({2});
  auto o = P.pr_order;
  EXPECT_TRUE(is_w_element(P, C(o, 1)).certified());
  EXPECT_TRUE(is_w_element(P, E(o, 1, 1) + E(o, 2, 2)).certified());
  WElt w = is_w_element(P, E(o, 1, 1));
  EXPECT_FALSE(w.certified());
  ASSERT_EQ(w.certificate.size(), 1u);
  EXPECT_EQ(w.certificate[0].first, Factor(2, 1));
  EXPECT_EQ(w.certificate[0].second, C(o, 1));
  EXPECT_THROW(certify(P, E(o, 1, 1), "e11"), InternalError);
}

TEST(Centralizer, Dimensions) {
  auto b11 = ge_basis(build_pyramid({1, 1}));
  ASSERT_EQ(b11.size(), 4u);
  std::multiset<RestrictedWeight> w;
  for (const auto& g : b11) w.insert(g.weight);
  EXPECT_EQ(w, (std::multiset<RestrictedWeight>{{R(0), R(0)}, {R(0), R(0)}, {R(1), R(-1)}, {R(-1), R(1)}}));
  EXPECT_EQ(ge_basis(build_pyramid({1, 2})).size(), 5u);
  auto b2 = ge_basis(build_pyramid({2}));
  ASSERT_EQ(b2.size(), 2u);
  for (const auto& g : b2) EXPECT_EQ(g.weight, (RestrictedWeight{R(0)}));
  for (int N = 1; N <= 6; ++N)
    for (const auto& parts : partitions_of(N)) {
      Pyramid P = build_pyramid(parts);
      auto e = nilpotent_e(P);
      auto basis = ge_basis(P);
      EXPECT_EQ(static_cast<int>(basis.size()), min_sum(parts));
      for (const auto& g : basis) EXPECT_TRUE(bracket(e, g.x).is_zero());
    }
}

TEST(DGenerators, Examples) {
  Pyramid P11 = build_pyramid({1, 1});
  EXPECT_EQ(d_generator(P11, 1, 1).value, E(P11.pr_order, 1, 1));
  Pyramid P2 = build_pyramid({2});
  auto o = P2.pr_order;
  EXPECT_EQ(d_generator(P2, 1, 1).value, E(o, 1, 1) + E(o, 2, 2) - C(o, 1));
  Pyramid P12 = build_pyramid({1, 2});
  EXPECT_EQ(d_generator(P12, 2, 1).value, E(P12.pr_order, 2, 2) + E(P12.pr_order, 3, 3));
  EXPECT_THROW(d_generator(P12, 1, 2), ValidationError);
}

TEST(DGenerators, CertifiedWithZeroWeight) {
  for (int N = 1; N <= 5; ++N)
    for (const auto& parts : partitions_of(N)) {
      Pyramid P = build_pyramid(parts);
      for (int i = 1; i <= P.n; ++i)
        for (int r = 1; r <= parts[i - 1]; ++r) {
          WElt w = d_generator(P, i, r);
          EXPECT_TRUE(has_zero_weight(P, w.value));
          EXPECT_TRUE(in_Up(P, w.value));
        }
    }
}

TEST(Lift, CartanVectorsShiftByEta) {
  for (const auto& parts : std::vector<std::vector<int>>{{1, 2}, {2, 2}, {1, 1, 3}}) {
    Pyramid P = build_pyramid(parts);
    auto eta = special_weights(P).eta;
    for (const auto& g : ge_basis(P)) {
      bool diagonal = g.x.coeffs.size() > 0;
      for (const auto& [k, c] : g.x.coeffs) diagonal &= k.first == k.second;
      if (!diagonal) continue;
      PbwElt want(P.pr_order);
      for (const auto& [k, c] : g.x.coeffs) want += (E(P.pr_order, k.first, k.first) + C(P.pr_order, eta[k.first - 1])) * c;
      EXPECT_EQ(theta(P, g), want);
      EXPECT_EQ(lift_generator(P, g).value, want) << P.label();
    }
  }
}

TEST(Lift, LeadingSymbolIsTheta) {
  for (const auto& parts : std::vector<std::vector<int>>{{1, 2}, {2, 2}, {1, 3}, {1, 1, 2}, {2, 3}}) {
    Pyramid P = build_pyramid(parts);
    for (const auto& g : ge_basis(P)) {
      WElt w = lift_generator(P, g);
      ASSERT_TRUE(w.certified());
      PbwElt top(P.pr_order);
      for (const auto& [m, c] : w.value.terms()) {
        EXPECT_LE(mono_good_degree(P, m), g.degree);
        if (mono_good_degree(P, m) == g.degree) top.add_normal(m, c);
      }
      EXPECT_EQ(top, theta(P, g)) << P.label();
      EXPECT_EQ(max_kazhdan(P, w.value), g.degree + 2);
    }
  }
}

TEST(Lift, ExplicitAndSolvedDAgreeInNormalForm) {
  for (const auto& parts : std::vector<std::vector<int>>{{2}, {1, 2}, {2, 2}, {1, 1, 2}, {1, 3}}) {
    Pyramid P = build_pyramid(parts);
    GeneratorSet G = build_generator_set(P);
    GeneratorProducts prods(G);
    for (std::size_t k = 0; k < G.H.size(); ++k) {
      const auto& h = G.H[k];
      WElt solved = lift_generator(P, h.symbol);
      ASSERT_TRUE(solved.certified());
      Exponents own(G.size(), 0);
      own[G.F.size() + k] = 1;
      auto nf = wpbw_normal_form(solved.value, prods);
      EXPECT_EQ(nf[own], 1 / h.pivot_coeff) << h.name << " on " << P.label();
      PbwElt diff = h.value * (1 / h.pivot_coeff) - solved.value;
      EXPECT_EQ(wpbw_normal_form(diff, prods)[own], 0);
    }
  }
}

TEST(GeneratorSet, Counts) {
  GeneratorSet G2 = build_generator_set(build_pyramid({2}));
  EXPECT_EQ(G2.H.size(), 2u);
  EXPECT_TRUE(G2.E.empty());
  EXPECT_TRUE(G2.F.empty());
  EXPECT_EQ(G2.H[0].name, "D_1^(1)");
  EXPECT_EQ(G2.H[1].name, "D_1^(2)");
  GeneratorSet G12 = build_generator_set(build_pyramid({1, 2}));
  EXPECT_EQ(G12.H.size(), 3u);
  EXPECT_EQ(G12.E.size(), 1u);
  EXPECT_EQ(G12.F.size(), 1u);
  for (int N = 1; N <= 5; ++N)
    for (const auto& parts : partitions_of(N)) {
      GeneratorSet G = build_generator_set(build_pyramid(parts));
      EXPECT_EQ(G.E.size(), G.F.size());
      EXPECT_EQ(static_cast<int>(G.H.size() + 2 * G.E.size()), min_sum(parts));
      EXPECT_EQ(static_cast<int>(G.H.size()), N);
    }
}

TEST(GeneratorSet, ProductsStayInside) {
  for (const auto& parts : std::vector<std::vector<int>>{{1, 2}, {2, 2}, {1, 1, 2}}) {
    Pyramid P = build_pyramid(parts);
    GeneratorSet G = build_generator_set(P);
    for (std::size_t a = 0; a < G.size(); ++a)
      for (std::size_t b = 0; b < G.size(); ++b)
        EXPECT_TRUE(is_w_element(P, G.at(a).value * G.at(b).value).certified()) << P.label();
  }
}

TEST(PbwReport, SmallCases) {
  auto r2 = pbw_dimension_report(build_pyramid({2}), 2);
  ASSERT_EQ(r2.size(), 3u);
  EXPECT_EQ(r2[0].solver_dim, 1);
  EXPECT_EQ(r2[0].symbol_count, 1);
  EXPECT_EQ(r2[2].solver_dim, 2);
  EXPECT_EQ(r2[2].symbol_count, 2);
  for (const auto& l : pbw_dimension_report(build_pyramid({1, 2}), 4)) EXPECT_TRUE(l.agree()) << l.j;
}

TEST(NormalForm, Examples) {
  Pyramid P = build_pyramid({1, 2});
  GeneratorSet G = build_generator_set(P);
  GeneratorProducts prods(G);
  const std::size_t f = 0, h = 1, e = 4;
  ASSERT_EQ(G.size(), 5u);
  Exponents fh(5, 0);
  fh[f] = fh[h] = 1;
  auto nf = wpbw_normal_form(G.F[0].value * G.H[0].value, prods);
  EXPECT_EQ(nf, (std::map<Exponents, Rational>{{fh, R(1)}}));

  auto ef = wpbw_normal_form(G.E[0].value * G.F[0].value, prods);
  Exponents fe(5, 0);
  fe[f] = fe[e] = 1;
  EXPECT_EQ(ef.at(fe), 1);
  for (const auto& [x, c] : ef) {
    if (x == fe) continue;
    EXPECT_EQ(x[f] + x[e], 0) << "non-leading term outside the H-subalgebra";
  }

  auto sc = wpbw_normal_form(C(P.pr_order, R(5, 2)), prods);
  EXPECT_EQ(sc, (std::map<Exponents, Rational>{{Exponents(5, 0), R(5, 2)}}));
  EXPECT_THROW(wpbw_normal_form(E(P.pr_order, 3, 1), prods), ValidationError);
}

TEST(NormalForm, RoundTrip) {
  std::mt19937_64 rng(23);
  for (const auto& parts : std::vector<std::vector<int>>{{1, 2}, {2, 2}, {1, 1, 2}, {1, 3}}) {
    Pyramid P = build_pyramid(parts);
    GeneratorSet G = build_generator_set(P);
    GeneratorProducts prods(G);
    std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
    for (int trial = 0; trial < 8; ++trial) {
      PbwElt u = C(P.pr_order, R(trial));
      for (int t = 0; t < 3; ++t) u += G.at(pick(rng)).value * G.at(pick(rng)).value * R(t + 1);
      auto nf = wpbw_normal_form(u, prods);
      EXPECT_EQ(expand_normal_form(nf, prods), u) << P.label();
    }
  }
}

TEST(Center, GelfandInvariants) {
  Pyramid P = build_pyramid({1, 1});
  auto o = P.pr_order;
  auto gs = center_generators(o, 2, 2);
  EXPECT_EQ(gs[0], E(o, 1, 1) + E(o, 2, 2));
  EXPECT_EQ(gs[1], E(o, 1, 1) * E(o, 1, 1) + E(o, 1, 2) * E(o, 2, 1) + E(o, 2, 1) * E(o, 1, 2) + E(o, 2, 2) * E(o, 2, 2));
  for (int N = 1; N <= 3; ++N) {
    Pyramid Q = build_pyramid({N});
    for (const auto& z : center_generators(Q.pr_order, N, 3))
      for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) EXPECT_TRUE(commutator(z, E(Q.pr_order, i, j)).is_zero());
  }
}

TEST(Center, Projections) {
  Pyramid P2 = build_pyramid({2});
  auto o = P2.pr_order;
  EXPECT_EQ(pr_center(P2, C(o, 1)).value, C(o, 1));
  EXPECT_EQ(pr_center(P2, center_generators(o, 2, 1)[0]).value, E(o, 1, 1) + E(o, 2, 2));
  EXPECT_THROW(pr_center(P2, E(o, 1, 1)), ValidationError);
  Pyramid P = build_pyramid({1, 2});
  GeneratorSet G = build_generator_set(P);
  WElt w = pr_center(P, center_generators(P.pr_order, 3, 2)[1]);
  EXPECT_TRUE(w.certified());
  EXPECT_TRUE(commutes_with_generators(w.value, G));
}
