#pragma once

#include "wgb/hwt.hpp"
#include "wgb/tableau.hpp"
#include "wgb/walg.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace wgb {

struct SuiteOptions {
  std::optional<std::vector<int>> partition;  ///< targeted run: partition-scoped criteria only
  std::uint64_t seed = 1;
  int threads = 1;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool resource_limit = false;
  std::string detail;
  double seconds = 0;
};

namespace acceptance {

using Check = std::function<bool(std::ostringstream&)>;

inline std::vector<Pyramid> pyramids_up_to(int Nmax) {
  std::vector<Pyramid> out;
  for (int N = 1; N <= Nmax; ++N)
    for (const auto& p : partitions_of(N)) out.push_back(build_pyramid(p));
  return out;
}

/// r-th elementary symmetric polynomial in t_j + shift over the given boxes.
inline PbwElt elementary_shifted(const OrderPtr& o, const std::vector<int>& boxes, int r, const Rational& shift_by) {
  PbwElt sum(o);
  std::vector<int> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(pick.size()) == r) {
      PbwElt term = PbwElt::scalar(o, 1);
      for (int j : pick) term = term * (PbwElt::unit(o, j, j) + PbwElt::scalar(o, shift_by));
      sum += term;
      return;
    }
    for (std::size_t k = from; k < boxes.size(); ++k) {
      pick.push_back(boxes[k]);
      rec(k + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return sum;
}

inline bool membership(const std::vector<Pyramid>& ps, std::ostringstream& os) {
  int count = 0;
  for (const auto& P : ps)
    for (int i = 1; i <= P.n; ++i)
      for (int r = 1; r <= P.parts[i - 1]; ++r) {
        WElt w = is_w_element(P, d_generator_raw(P, i, r));
        if (!w.certified() || !has_zero_weight(P, w.value)) {
          os << "D_" << i << "^(" << r << ") for " << P.label() << " has nonzero residual";
          return false;
        }
        ++count;
      }
  os << count << " invariants over " << ps.size() << " partitions";
  return true;
}

inline bool elementary_images(const std::vector<Pyramid>& ps, std::ostringstream& os) {
  int count = 0;
  for (const auto& P : ps)
    for (int i = 1; i <= P.n; ++i) {
      std::vector<int> boxes;
      for (int j = 1; j <= P.N; ++j)
        if (P.row[j] == i) boxes.push_back(j);
      for (int r = 1; r <= P.parts[i - 1]; ++r) {
        PbwElt got = xi_minus_eps(P, pi_minus_gamma(P, d_generator(P, i, r)));
        PbwElt want = elementary_shifted(P.hc_order, boxes, r, Rational(i - 1));
        if (!(got == want)) {
          os << "mismatch for D_" << i << "^(" << r << ") on " << P.label();
          return false;
        }
        ++count;
      }
    }
  os << count << " identities over " << ps.size() << " partitions";
  return true;
}

inline bool weight_invariants(const std::vector<Pyramid>& ps, std::ostringstream& os) {
  for (const auto& P : ps) {
    auto s = special_weights(P);
    for (int j = 1; j <= P.N; ++j) {
      if (s.delta[j - 1] + s.eta[j - 1] != s.gamma[j - 1] || s.epsilon[j - 1] + s.delta[j - 1] != 1 - P.row[j]) {
        os << "failure on " << P.label() << " at box " << j;
        return false;
      }
    }
  }
  os << ps.size() << " partitions";
  return true;
}

inline bool pbw_ranks(std::ostringstream& os) {
  int levels = 0;
  for (const auto& P : pyramids_up_to(5))
    for (const auto& l : pbw_dimension_report(P, 8)) {
      if (!l.agree()) {
        os << P.label() << " j=" << l.j << ": solver " << l.solver_dim << " vs count " << l.symbol_count;
        return false;
      }
      ++levels;
    }
  os << levels << " (partition, level) pairs agree";
  return true;
}

/// Exponent vectors over all generators with total Kazhdan degree <= kmax.
inline std::vector<Exponents> exponents_up_to(const GeneratorSet& G, int kmax) {
  std::vector<Exponents> out;
  Exponents e(G.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t g, int left) {
    if (g == G.size()) {
      out.push_back(e);
      return;
    }
    int w = G.at(g).kazhdan;
    for (e[g] = 0; e[g] * w <= left; ++e[g]) rec(g + 1, left - e[g] * w);
    e[g] = 0;
  };
  rec(0, kmax);
  return out;
}

inline bool cartan_quotient(std::ostringstream& os) {
  long indep = 0, killed = 0;
  for (const auto& P : pyramids_up_to(5)) {
    GeneratorSet G = build_generator_set(P);
    GeneratorProducts prods(G);
    const std::size_t m = G.F.size(), l = G.H.size();
    Echelon ech;
    std::map<Mono, int> coord;
    long h_count = 0;
    for (const auto& e : exponents_up_to(G, 6)) {
      bool has_f = false, has_e = false;
      std::vector<int> wt(P.n, 0);
      for (std::size_t i = 0; i < m; ++i) {
        has_f |= e[i] != 0;
        has_e |= e[m + l + i] != 0;
        for (int k = 0; k < P.n; ++k)
          wt[k] += static_cast<int>(to_long(G.E[i].symbol.weight[k])) * (e[m + l + i] - e[i]);
      }
      if (!has_f && !has_e) {
        PbwElt img = pi_minus_gamma_unchecked(P, prods.product(e));
        SparseVec v;
        std::map<int, Rational> tmp;
        for (const auto& [mono, c] : img.terms()) tmp[coord.try_emplace(mono, static_cast<int>(coord.size())).first->second] = c;
        v.assign(tmp.begin(), tmp.end());
        if (!ech.insert(v)) {
          os << P.label() << ": images of H-monomials are dependent";
          return false;
        }
        ++h_count;
      } else if (has_e && std::all_of(wt.begin(), wt.end(), [](int x) { return x == 0; })) {
        if (!pi_minus_gamma_unchecked(P, prods.product(e)).is_zero()) {
          os << P.label() << ": a monomial with E-part survives the quotient";
          return false;
        }
        ++killed;
      }
    }
    indep += h_count;
  }
  os << indep << " independent H-images, " << killed << " E-monomials killed";
  return true;
}

inline bool ed_square(std::ostringstream& os) {
  int count = 0;
  for (const auto& P : pyramids_up_to(4))
    for (const auto& row : verify_ed_square(P, P.N)) {
      if (!row.equal) {
        os << P.label() << " k=" << row.k << ": sides differ";
        return false;
      }
      ++count;
    }
  os << count << " (partition, k) pairs";
  return true;
}

/// Result of applying a sequence of generators to a vector of the slice.
struct SliceVec {
  bool boundary = false;  ///< some step left the truncation
  bool zero = false;      ///< some step left the weight cone
  RestrictedWeight weight;
  std::vector<Rational> v;
};

inline SliceVec apply_generator(const VermaSlice& V, std::size_t g, SliceVec x) {
  if (x.boundary || x.zero) return x;
  const auto& blk = V.actions[g].at(x.weight);
  if (blk.boundary) {
    x.boundary = true;
    return x;
  }
  if (!V.basis.count(blk.target)) {
    x.zero = true;
    return x;
  }
  x.v = detail::mat_vec(blk.matrix, x.v);
  x.weight = blk.target;
  return x;
}

/// F^a H^b E^c applied to x (rightmost factor first).
inline SliceVec apply_monomial(const VermaSlice& V, const Exponents& e, SliceVec x) {
  for (std::size_t g = e.size(); g-- > 0;)
    for (int p = 0; p < e[g]; ++p) x = apply_generator(V, g, x);
  return x;
}

inline bool same_vec(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return a == b;
}

/// Number of exponent vectors a with sum a_i gamma_i = d, by a DP over gammas.
inline std::map<RestrictedWeight, long> exponent_counts(const std::vector<RestrictedWeight>& gammas,
                                                        const std::vector<int>& heights, int depth, int n) {
  std::map<std::pair<RestrictedWeight, int>, long> cur;  // (difference, depth) -> count
  cur[{RestrictedWeight(n, Rational(0)), 0}] = 1;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    std::map<std::pair<RestrictedWeight, int>, long> next;
    for (const auto& [key, cnt] : cur)
      for (int k = 0; key.second + k * heights[i] <= depth; ++k) {
        RestrictedWeight d = key.first;
        for (int t = 0; t < n; ++t) d[t] += gammas[i][t] * k;
        next[{d, key.second + k * heights[i]}] += cnt;
      }
    cur = std::move(next);
  }
  std::map<RestrictedWeight, long> out;
  for (const auto& [key, cnt] : cur) out[key.first] += cnt;
  return out;
}

inline bool verma_structure(std::ostringstream& os) {
  long checks = 0;
  for (const auto& parts : std::vector<std::vector<int>>{{1, 2}, {2, 2}, {1, 1, 2}}) {
    Pyramid P = build_pyramid(parts);
    GeneratorSet G = build_generator_set(P);
    TWeight lambda(P.N);
    for (int j = 0; j < P.N; ++j) lambda[j] = make_rational(2 * j + 1, 3);  // generic weight
    VermaSlice V = build_verma(G, lambda, 4);
    auto counts = exponent_counts(V.gammas, V.heights, 4, P.n);
    for (const auto& mu : V.weights) {
      RestrictedWeight d = V.lambda;
      for (int t = 0; t < P.n; ++t) d[t] -= mu[t];
      if (counts[d] != V.m_dims[mu]) {
        os << P.label() << ": weight space dimension differs from the exponent count";
        return false;
      }
    }
    GeneratorProducts prods(G);
    for (std::size_t x = 0; x < G.size(); ++x)
      for (std::size_t y = x + 1; y < G.size(); ++y) {
        auto nf = wpbw_normal_form(commutator(G.at(x).value, G.at(y).value), prods);
        for (const auto& mu : V.weights)
          for (int col = 0; col < V.m_dims[mu]; ++col) {
            SliceVec s{false, false, mu, std::vector<Rational>(V.m_dims[mu], Rational(0))};
            s.v[col] = 1;
            auto xy = apply_generator(V, x, apply_generator(V, y, s));
            auto yx = apply_generator(V, y, apply_generator(V, x, s));
            if (xy.boundary || yx.boundary) continue;
            std::vector<SliceVec> terms;
            bool interior = true;
            for (const auto& [e, c] : nf) {
              terms.push_back(apply_monomial(V, e, s));
              interior &= !terms.back().boundary;
            }
            if (!interior) continue;
            RestrictedWeight target = xy.zero ? yx.weight : xy.weight;
            if (xy.zero && yx.zero) {
              target = mu;
              for (int t = 0; t < P.n; ++t) target[t] += G.at(x).symbol.weight[t] + G.at(y).symbol.weight[t];
            }
            if (!V.basis.count(target)) continue;  // outside the cone: everything is zero there
            std::vector<Rational> lhs(V.m_dims[target], Rational(0)), rhs = lhs;
            if (!xy.zero)
              for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] += xy.v[k];
            if (!yx.zero)
              for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] -= yx.v[k];
            std::size_t k2 = 0;
            for (const auto& [e, c] : nf) {
              const auto& t = terms[k2++];
              if (t.zero) continue;
              if (t.weight != target) {
                os << P.label() << ": normal form term of the wrong weight";
                return false;
              }
              for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += c * t.v[k];
            }
            if (!same_vec(lhs, rhs)) {
              os << P.label() << ": [" << G.at(x).name << "," << G.at(y).name << "] acts inconsistently";
              return false;
            }
            ++checks;
          }
      }
  }
  os << checks << " interior commutator checks";
  return true;
}

inline bool irreducible_quotients(std::ostringstream& os) {
  // gl_2 (e = 0): Weyl dimension mu_1 - mu_2 + 1 from the eigenvalues of
  // e_11 and e_22 on the highest weight vector.
  Pyramid P11 = build_pyramid({1, 1});
  GeneratorSet G11 = build_generator_set(P11);
  const std::vector<std::string> samples = {"1;0", "2;0", "3;1", "5;1", "7/2;1/2"};
  for (const auto& s : samples) {
    Tableau A = parse_tableau(P11, s);
    Rational gap = A.entries[0] - A.entries[1];
    int depth = static_cast<int>(to_long(gap)) + 2;
    VermaSlice V = build_verma(G11, A.entries, depth);
    // H action on the highest weight vector: D_1^(1) = e_11, D_2^(1) = e_22.
    Rational mu1 = V.actions[G11.F.size()].at(V.lambda).matrix[0][0];
    Rational mu2 = V.actions[G11.F.size() + 1].at(V.lambda).matrix[0][0];
    Rational weyl = mu1 - mu2 + 1;
    auto pv = finite_dim_probe(V);
    if (!pv.closed || Rational(pv.total_dim) != weyl) {
      os << "tableau " << s << ": expected dimension " << weyl << ", probe gave "
         << (pv.closed ? std::to_string(pv.total_dim) : std::string("open"));
      return false;
    }
  }
  for (int N = 1; N <= 5; ++N) {
    Pyramid P = build_pyramid({N});
    GeneratorSet G = build_generator_set(P);
    TWeight lambda(N);
    for (int j = 0; j < N; ++j) lambda[j] = make_rational(j * j - 3, 2);
    auto pv = finite_dim_probe(G, lambda, 6);
    if (!pv.closed || pv.total_dim != 1) {
      os << "single row " << N << " is not one-dimensional";
      return false;
    }
  }
  Pyramid P12 = build_pyramid({1, 2});
  GeneratorSet G12 = build_generator_set(P12);
  for (const auto& s : std::vector<std::string>{"3;1,2", "2;0,1", "4;3,0", "5/2;1/2,3/2"}) {
    Tableau A = parse_tableau(P12, s);
    if (classify(A) != Verdict::finite) {
      os << s << " should be column strict";
      return false;
    }
    auto pv = finite_dim_probe(G12, A.entries, 10);
    if (!pv.closed) {
      os << "column-strict " << s << " did not close at depth 10";
      return false;
    }
  }
  for (const auto& s : std::vector<std::string>{"1/2;0,1", "3/2;0,2", "1/3;1,2"}) {
    auto pv = finite_dim_probe(G12, parse_tableau(P12, s).entries, 10);
    if (pv.closed) {
      os << "non-integral " << s << " closed unexpectedly";
      return false;
    }
  }
  os << "5 Weyl dimensions, 5 single rows, 4 closed and 3 open samples";
  return true;
}

inline bool classifier_vs_rs(std::ostringstream& os) {
  long count = 0;
  const std::vector<std::vector<Rational>> alphabets = {
      {Rational(0), Rational(1), Rational(2)}, {Rational(0), Rational(1), make_rational(1, 2)}};
  for (const auto& P : pyramids_up_to(6))
    for (const auto& alpha : alphabets) {
      std::vector<int> digit(P.N, 0);
      while (true) {
        Tableau A{P, {}};
        for (int d : digit) A.entries.push_back(alpha[d]);
        auto rep = cls_crosscheck(A);
        if (!rep.agree()) {
          os << "disagreement on " << P.label() << " tableau " << format_tableau(A);
          return false;
        }
        if (has_column_strict_rep_exhaustive(A) != (rep.verdict == Verdict::finite)) {
          os << "search and exhaustive oracle disagree on " << format_tableau(A);
          return false;
        }
        ++count;
        int k = 0;
        while (k < P.N && ++digit[k] == 3) digit[k++] = 0;
        if (k == P.N) break;
      }
    }
  os << count << " tableaux";
  return true;
}

inline bool centrality(std::uint64_t seed, std::ostringstream& os) {
  int count = 0;
  std::vector<Pyramid> ps = pyramids_up_to(4);
  std::vector<GeneratorSet> gsets;
  for (const auto& P : ps) {
    gsets.push_back(build_generator_set(P));
    auto zs = center_generators(P.pr_order, P.N, 3);
    for (const auto& z : zs) {
      WElt w = pr_center(P, z);
      if (!commutes_with_generators(w.value, gsets.back())) {
        os << P.label() << ": projected Gelfand invariant is not central";
        return false;
      }
      ++count;
    }
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t pick = std::uniform_int_distribution<std::size_t>(1, ps.size() - 1)(rng);
    const GeneratorSet& G = gsets[pick];
    TWeight lambda(G.P.N);
    for (auto& x : lambda) {
      long num = std::uniform_int_distribution<long>(-6, 6)(rng);
      long den = std::uniform_int_distribution<long>(1, 3)(rng);
      x = make_rational(num, den);
    }
    for (const auto& cv : central_character(G, lambda, 3, 4)) {
      if (cv.via_psi != cv.via_verma || cv.via_psi != cv.via_highest_weight || !cv.annihilates) {
        os << G.P.label() << " trial " << trial << " k=" << cv.k << ": routes disagree";
        return false;
      }
    }
  }
  os << count << " centrality checks, 10 random weights agree";
  return true;
}

}  // namespace acceptance

/// Runs the acceptance criteria; independent items may run concurrently,
/// results come back in declaration order.
inline std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt) {
  using namespace acceptance;
  struct Item {
    int id;
    std::string title;
    Check check;
  };
  std::vector<Item> items;
  if (opt.partition) {
    std::vector<Pyramid> one{build_pyramid(*opt.partition)};
    items.push_back({1, "D invariants pass the membership test", [one](auto& os) { return membership(one, os); }});
    items.push_back({2, "Cartan image of D is the shifted elementary symmetric polynomial",
                     [one](auto& os) { return elementary_images(one, os); }});
    items.push_back({3, "weight convention invariants", [one](auto& os) { return weight_invariants(one, os); }});
  } else {
    items.push_back({1, "D invariants pass the membership test (N <= 6)",
                     [](auto& os) { return membership(pyramids_up_to(6), os); }});
    items.push_back({2, "Cartan image of D is the shifted elementary symmetric polynomial (N <= 6)",
                     [](auto& os) { return elementary_images(pyramids_up_to(6), os); }});
    items.push_back({3, "weight convention invariants (N <= 9)",
                     [](auto& os) { return weight_invariants(pyramids_up_to(9), os); }});
    items.push_back({4, "PBW ranks match symbol counts (N <= 5, Kazhdan <= 8)", pbw_ranks});
    items.push_back({5, "Cartan quotient: H-images independent, E-part killed (N <= 5)", cartan_quotient});
    items.push_back({6, "Harish-Chandra square commutes (N <= 4, k <= N)", ed_square});
    items.push_back({7, "Verma dimensions and module axioms (depth 4)", verma_structure});
    items.push_back({8, "irreducible quotients: Weyl dimensions, single rows, closure", irreducible_quotients});
    items.push_back({9, "column-strict classifier agrees with RS shape (N <= 6)", classifier_vs_rs});
    std::uint64_t seed = opt.seed;
    items.push_back({10, "projected center is central; central characters agree",
                     [seed](auto& os) { return centrality(seed, os); }});
  }
  std::vector<CriterionResult> results(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k; (k = next++) < items.size();) {
      CriterionResult& r = results[k];
      r.id = items[k].id;
      r.title = items[k].title;
      auto t0 = std::chrono::steady_clock::now();
      std::ostringstream os;
      try {
        r.passed = items[k].check(os);
      } catch (const ResourceLimitError& e) {
        r.passed = false;
        r.resource_limit = true;
        os << "resource limit: " << e.what();
      } catch (const std::exception& e) {
        r.passed = false;
        os << "error: " << e.what();
      }
      r.detail = os.str();
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  int nthreads = std::max(1, std::min<int>(opt.threads, static_cast<int>(items.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace wgb
