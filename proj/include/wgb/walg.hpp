#pragma once

#include "wgb/errors.hpp"
#include "wgb/linalg.hpp"
#include "wgb/pbw.hpp"
#include "wgb/pyramid.hpp"

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wgb {

// ------------------------------------------------------------ membership

/// Element of U(p) together with its membership residuals pr([x, value])
/// for the matrix units x spanning m.
struct WElt {
  PbwElt value;
  std::vector<std::pair<Factor, PbwElt>> certificate;

  bool certified() const {
    for (const auto& [x, r] : certificate)
      if (!r.is_zero()) return false;
    return true;
  }
};

inline std::vector<Factor> m_basis(const Pyramid& P, bool levi_only = false) {
  std::vector<Factor> b;
  for (int i = 1; i <= P.N; ++i)
    for (int j = 1; j <= P.N; ++j)
      if (P.in_m(i, j) && (!levi_only || P.in_g0(i, j))) b.emplace_back(i, j);
  return b;
}

/// pr([x, u]) for u in U(p) and x in m, using pr(u x) = chi(x) u.
inline PbwElt membership_residual(const Pyramid& P, const PbwElt& u, Factor x) {
  PbwElt xu = PbwElt::unit(P.pr_order, x.first, x.second) * u;
  PbwElt r = pr(P, xu);
  if (P.chi_unit(x.first, x.second)) r -= u;
  return r;
}

/// Checks u in U(g,e). With levi_only the test is for the W-algebra of
/// (g_0, e): input in U(p_0), brackets with m_0 only.
inline WElt is_w_element(const Pyramid& P, const PbwElt& u_in, bool levi_only = false) {
  PbwElt u = straighten(u_in, P.pr_order);
  if (levi_only)
    require(in_Up0(P, u), "membership test for the Levi: input is not in U(p_0)");
  else
    require(in_Up(P, u), "membership test: input has factors outside p");
  WElt w{u, {}};
  for (Factor x : m_basis(P, levi_only)) w.certificate.emplace_back(x, membership_residual(P, u, x));
  return w;
}

inline WElt certify(const Pyramid& P, const PbwElt& u, const std::string& what, bool levi_only = false) {
  WElt w = is_w_element(P, u, levi_only);
  if (!w.certified()) throw InternalError(what + " failed the membership test");
  return w;
}

// ------------------------------------------------------------- centralizer

/// Homogeneous basis vector of g^e.
struct GeVector {
  LieElt x;
  RestrictedWeight weight;
  int degree = 0;
  int row_from = 0, row_to = 0;  ///< block rows of the units
  Factor pivot{0, 0};            ///< unit with coefficient 1, absent from the other vectors
};

/// ker(ad e) block by block (row pair, good degree), each block in reduced
/// echelon form. Ordered F-type (row_from > row_to), then H-type, then
/// E-type; F and E blocks are listed so that the k-th F and k-th E have
/// opposite weights.
inline std::vector<GeVector> ge_basis(const Pyramid& P) {
  LieElt e = nilpotent_e(P);
  std::vector<GeVector> F, H, E;
  for (int r1 = 1; r1 <= P.n; ++r1)
    for (int r2 = 1; r2 <= P.n; ++r2)
      for (int d = -2 * P.ell; d <= 2 * P.ell; d += 2) {
        std::vector<Factor> units;
        for (int a = 1; a <= P.N; ++a)
          for (int b = 1; b <= P.N; ++b)
            if (P.row[a] == r1 && P.row[b] == r2 && P.good_degree(a, b) == d) units.emplace_back(a, b);
        if (units.empty()) continue;
        std::map<Factor, int> out_index;
        std::vector<LieElt> images;
        for (auto [a, b] : units) {
          images.push_back(bracket(e, LieElt::unit(a, b)));
          for (const auto& [k, c] : images.back().coeffs) out_index.try_emplace(k, 0);
        }
        int rows = 0;
        for (auto& [k, v] : out_index) v = rows++;
        const int cols = static_cast<int>(units.size());
        DenseMatrix A(rows, std::vector<Rational>(cols, Rational(0)));
        for (int c = 0; c < cols; ++c)
          for (const auto& [k, v] : images[c].coeffs) A[out_index[k]][c] = v;
        std::vector<int> free_cols;
        auto kernel = nullspace(A, cols, &free_cols);
        for (std::size_t kv = 0; kv < kernel.size(); ++kv) {
          const auto& vec = kernel[kv];
          ensure(d >= 0, "centralizer has a component of negative good degree");
          GeVector g;
          for (int c = 0; c < cols; ++c)
            if (sgn(vec[c]) != 0) g.x.add(units[c].first, units[c].second, vec[c]);
          // The free column of this null vector is its distinguished unit.
          g.pivot = units[free_cols[kv]];
          g.degree = d;
          g.row_from = r1;
          g.row_to = r2;
          g.weight = restricted_weight(P, units[0].first, units[0].second);
          (r1 > r2 ? F : r1 == r2 ? H : E).push_back(std::move(g));
        }
      }
  // E sorted by (from, to, degree); F by the mirrored key so pairs line up.
  auto keyE = [](const GeVector& g) { return std::make_tuple(g.row_from, g.row_to, g.degree); };
  auto keyF = [](const GeVector& g) { return std::make_tuple(g.row_to, g.row_from, g.degree); };
  std::stable_sort(E.begin(), E.end(), [&](auto& a, auto& b) { return keyE(a) < keyE(b); });
  std::stable_sort(F.begin(), F.end(), [&](auto& a, auto& b) { return keyF(a) < keyF(b); });
  std::vector<GeVector> all;
  for (auto* part : {&F, &H, &E})
    for (auto& g : *part) all.push_back(std::move(g));
  return all;
}

inline int ge_dimension(const Pyramid& P) {
  int d = 0;
  for (int a : P.parts)
    for (int b : P.parts) d += std::min(a, b);
  return d;
}

// --------------------------------------------------------- D generators

/// Explicit invariant D_i^(r): the signed sum over index tuples, shifted
/// by eta and straightened. Not certified here.
inline PbwElt d_generator_raw(const Pyramid& P, int i, int r) {
  require(i >= 1 && i <= P.n, "d_generator: row index " + std::to_string(i) + " out of range");
  require(r >= 1 && r <= P.parts[i - 1], "d_generator: r = " + std::to_string(r) + " out of range 1.." +
                                             std::to_string(P.parts[i - 1]));
  PbwElt sum(P.pr_order);
  std::vector<Factor> word;
  // cost = sum of column differences + number of factors; must end at r.
  std::function<void(int, int, int, int)> extend = [&](int t, int prev_j, int cost, int below) {
    // Choose i_t.
    for (int a = 1; a <= P.N; ++a) {
      if (t == 1) {
        if (P.row[a] != i) continue;
      } else {
        if (P.row[a] != P.row[prev_j]) continue;
        if (P.row[prev_j] >= i ? !(P.col[prev_j] < P.col[a]) : !(P.col[prev_j] >= P.col[a])) continue;
      }
      int below_t = below + ((t > 1 && P.row[a] < i) ? 1 : 0);
      for (int b = 1; b <= P.N; ++b) {
        if (P.col[b] < P.col[a]) continue;
        int c = cost + (P.col[b] - P.col[a]) + 1;
        if (c > r) continue;
        word.emplace_back(a, b);
        if (c == r) {
          if (P.row[b] == i) {
            int s = t;
            int sign_exp = r - s + below_t;
            sum += PbwElt::word(P.pr_order, word, sign_exp % 2 ? -1 : 1);
          }
        } else {
          extend(t + 1, b, c, below_t);
        }
        word.pop_back();
      }
    }
  };
  extend(1, 0, 0, 0);
  return shift(sum, special_weights(P).eta);
}

inline WElt d_generator(const Pyramid& P, int i, int r) {
  return certify(P, d_generator_raw(P, i, r),
                 "D_" + std::to_string(i) + "^(" + std::to_string(r) + ") for partition " + P.label());
}

// ------------------------------------------------------------ lift solver

/// theta(x): x shifted by eta in degree 0, x itself otherwise.
inline PbwElt theta(const Pyramid& P, const GeVector& g) {
  PbwElt u = from_lie(P.pr_order, g.x);
  if (g.degree == 0) {
    auto eta = special_weights(P).eta;
    Rational s = 0;
    for (const auto& [k, c] : g.x.coeffs)
      if (k.first == k.second) s += c * eta[k.first - 1];
    u += PbwElt::scalar(P.pr_order, s);
  }
  return u;
}

/// PR-normal monomials in U(p) with Kazhdan degree <= kmax, ordered by
/// (length, Kazhdan degree, factor list). Optional filter on the candidate.
inline std::vector<Mono> up_monomials(const Pyramid& P, int kmax, const std::function<bool(const Mono&)>& keep = {}) {
  std::vector<UnitCode> units;
  for (int i = 1; i <= P.N; ++i)
    for (int j = 1; j <= P.N; ++j)
      if (P.in_p(i, j)) units.push_back(unit_code(i, j));
  const auto& rank = P.pr_order->rank;
  std::sort(units.begin(), units.end(), [&](UnitCode a, UnitCode b) { return rank[a] < rank[b]; });
  std::vector<Mono> out;
  Mono cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int budget) {
    if (!keep || keep(cur)) out.push_back(cur);
    guard(static_cast<long>(out.size()), limits().max_matrix_dim * 20, "monomial enumeration");
    for (std::size_t k = from; k < units.size(); ++k) {
      int kz = P.kazhdan(unit_i(units[k]), unit_j(units[k]));
      if (kz > budget) continue;
      cur.push_back(static_cast<char>(units[k]));
      rec(k, budget - kz);
      cur.pop_back();
    }
  };
  rec(0, kmax);
  std::stable_sort(out.begin(), out.end(), [&](const Mono& a, const Mono& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    int ka = mono_kazhdan(P, a), kb = mono_kazhdan(P, b);
    if (ka != kb) return ka < kb;
    return a < b;
  });
  return out;
}

namespace detail {

/// Interns (m-unit index, monomial) coordinates of residual vectors.
struct CoordTable {
  std::unordered_map<std::string, int> index;
  int at(int xb, const Mono& m) {
    std::string key(1, static_cast<char>(xb));
    key += m;
    auto [it, fresh] = index.try_emplace(std::move(key), static_cast<int>(index.size()));
    return it->second;
  }
};

inline SparseVec residual_vector(const Pyramid& P, const std::vector<Factor>& mb, const PbwElt& u, CoordTable& ct) {
  std::map<int, Rational> v;
  for (std::size_t k = 0; k < mb.size(); ++k) {
    PbwElt res = membership_residual(P, u, mb[k]);
    for (const auto& [m, c] : res.terms()) v[ct.at(static_cast<int>(k), m)] += c;
  }
  SparseVec out;
  for (auto& [i, c] : v)
    if (sgn(c) != 0) out.emplace_back(i, c);
  return out;
}

}  // namespace detail

/// Solves for a W-element whose good-degree-j part is theta(x) and whose
/// remaining terms have good degree < j, weight of x, Kazhdan <= j + 2.
/// Free unknowns are set to zero (canonical reduced-echelon choice).
inline WElt lift_generator(const Pyramid& P, const GeVector& g) {
  const int j = g.degree;
  PbwElt base = theta(P, g);
  std::vector<int> wt;
  for (const auto& q : g.weight) wt.push_back(static_cast<int>(to_long(q)));
  auto unknowns = up_monomials(P, j + 2, [&](const Mono& m) {
    return mono_good_degree(P, m) < j && mono_weight(P, m) == wt;
  });
  guard(static_cast<long>(unknowns.size()), limits().max_matrix_dim, "lift unknowns");
  auto mb = m_basis(P);
  detail::CoordTable ct;
  auto rhs_vec = detail::residual_vector(P, mb, base, ct);
  std::vector<SparseVec> cols;
  cols.reserve(unknowns.size());
  for (const auto& m : unknowns) {
    PbwElt u(P.pr_order);
    u.add_normal(m, 1);
    cols.push_back(detail::residual_vector(P, mb, u, ct));
  }
  // Transpose into equations: sum_k c_k cols[k][row] = -rhs[row].
  std::map<int, std::pair<SparseVec, Rational>> eqs;
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (const auto& [row, c] : cols[k]) eqs[row].first.emplace_back(static_cast<int>(k), c);
  for (const auto& [row, c] : rhs_vec) eqs[row].second = -c;
  std::vector<std::pair<SparseVec, Rational>> system;
  for (auto& [row, e] : eqs) system.push_back(std::move(e));
  auto sol = solve_canonical(system, static_cast<int>(unknowns.size()));
  if (!sol)
    throw InternalError("lift_generator: no lift exists for a degree " + std::to_string(j) +
                        " centralizer vector of partition " + P.label());
  PbwElt u = base;
  for (std::size_t k = 0; k < unknowns.size(); ++k)
    if (sgn((*sol)[k]) != 0) u.add_normal(unknowns[k], (*sol)[k]);
  return certify(P, u, "lifted generator");
}

// --------------------------------------------------------- generator set

struct Generator {
  std::string name;
  PbwElt value;
  GeVector symbol;
  int kazhdan = 0;
  Rational pivot_coeff = 1;  ///< coefficient of symbol.pivot in the leading linear part of value
};

/// Generators F_1..F_m, H_1..H_l, E_1..E_m of U(g,e). H are the explicit
/// D invariants, E and F come from the lift solver.
struct GeneratorSet {
  Pyramid P;
  std::vector<Generator> F, H, E;

  std::size_t size() const { return F.size() + H.size() + E.size(); }
  const Generator& at(std::size_t k) const {
    if (k < F.size()) return F[k];
    k -= F.size();
    if (k < H.size()) return H[k];
    return E[k - H.size()];
  }
};

/// Linear part of the good-degree-d component, as coefficients on units.
inline std::map<Factor, Rational> linear_part(const Pyramid& P, const PbwElt& u, int d) {
  std::map<Factor, Rational> out;
  for (const auto& [m, c] : u.terms())
    if (m.size() == 1 && mono_good_degree(P, m) == d) out[factors_of(m)[0]] = c;
  return out;
}

inline GeneratorSet build_generator_set(const Pyramid& P) {
  GeneratorSet G{P, {}, {}, {}};
  auto basis = ge_basis(P);
  ensure(static_cast<int>(basis.size()) == ge_dimension(P), "centralizer dimension mismatch");
  int fcount = 0, ecount = 0;
  for (const auto& g : basis) {
    Generator gen;
    gen.symbol = g;
    gen.kazhdan = g.degree + 2;
    if (g.row_from == g.row_to) {
      int r = g.degree / 2 + 1;
      gen.name = "D_" + std::to_string(g.row_from) + "^(" + std::to_string(r) + ")";
      gen.value = d_generator(P, g.row_from, r).value;
      // The leading linear part must be a multiple of the block's basis vector.
      auto lin = linear_part(P, gen.value, g.degree);
      ensure(lin.count(g.pivot) > 0, "D generator misses its centralizer pivot");
      gen.pivot_coeff = lin[g.pivot];
      std::map<Factor, Rational> expect;
      for (const auto& [k, c] : g.x.coeffs) expect[k] = c * gen.pivot_coeff;
      ensure(lin == expect, "D generator symbol is not a multiple of its centralizer vector");
      G.H.push_back(std::move(gen));
    } else {
      bool is_e = g.row_from < g.row_to;
      gen.name = (is_e ? "E_" + std::to_string(++ecount) : "F_" + std::to_string(++fcount));
      gen.value = lift_generator(P, g).value;
      (is_e ? G.E : G.F).push_back(std::move(gen));
    }
  }
  return G;
}

// ------------------------------------------------------------ normal form

/// Exponent vector over F..., H..., E... in GeneratorSet order.
using Exponents = std::vector<int>;

/// Ordered products of generators, memoized.
class GeneratorProducts {
 public:
  explicit GeneratorProducts(const GeneratorSet& G) : G_(G) {}

  const PbwElt& product(const Exponents& e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    std::size_t first = 0;
    while (first < e.size() && e[first] == 0) ++first;
    PbwElt val(G_.P.pr_order);
    if (first == e.size()) {
      val = PbwElt::scalar(G_.P.pr_order, 1);
    } else {
      Exponents rest = e;
      --rest[first];
      PbwElt tail = product(rest);
      val = G_.at(first).value * tail;
    }
    return cache_.emplace(e, std::move(val)).first->second;
  }

  const GeneratorSet& generators() const { return G_; }

 private:
  const GeneratorSet& G_;
  std::map<Exponents, PbwElt> cache_;
};

/// Coefficients of u on the ordered monomials F^a H^b E^c. Reads the top
/// good-filtration symbol, subtracts the matching generator product and
/// repeats; (good degree, length) of the top part strictly decreases.
inline std::map<Exponents, Rational> wpbw_normal_form(const PbwElt& u_in, GeneratorProducts& prods) {
  const GeneratorSet& G = prods.generators();
  const Pyramid& P = G.P;
  PbwElt rem = straighten(u_in, P.pr_order);
  require(in_Up(P, rem), "wpbw_normal_form: input is not in U(p)");
  std::map<UnitCode, std::size_t> pivot_of;
  for (std::size_t k = 0; k < G.size(); ++k) {
    auto pv = G.at(k).symbol.pivot;
    pivot_of[unit_code(pv.first, pv.second)] = k;
  }
  std::map<Exponents, Rational> out;
  std::pair<int, int> last{1 << 30, 1 << 30};
  while (!rem.is_zero()) {
    int d = -1, len = -1;
    for (const auto& [m, c] : rem.terms()) {
      int dm = mono_good_degree(P, m);
      if (dm > d || (dm == d && static_cast<int>(m.size()) > len)) {
        d = dm;
        len = static_cast<int>(m.size());
      }
    }
    ensure(std::make_pair(d, len) < last, "wpbw_normal_form: filtration metric did not decrease");
    last = {d, len};
    std::vector<std::pair<Exponents, Rational>> found;
    for (const auto& [m, c] : rem.terms()) {
      if (mono_good_degree(P, m) != d || static_cast<int>(m.size()) != len) continue;
      Exponents e(G.size(), 0);
      bool all_pivots = true;
      Rational scale = 1;
      for (char ch : m) {
        auto it = pivot_of.find(static_cast<UnitCode>(ch));
        if (it == pivot_of.end()) {
          all_pivots = false;
          break;
        }
        ++e[it->second];
        scale *= G.at(it->second).pivot_coeff;
      }
      if (all_pivots) found.emplace_back(std::move(e), c / scale);
    }
    for (const auto& [e, c] : found) {
      rem -= prods.product(e) * c;
      out[e] += c;
    }
    for (const auto& [m, c] : rem.terms())
      if (mono_good_degree(P, m) == d && static_cast<int>(m.size()) == len)
        throw InternalError("wpbw_normal_form: leading symbol is not a polynomial in the centralizer basis "
                            "(input not in the W-algebra?)");
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// Inverse of wpbw_normal_form.
inline PbwElt expand_normal_form(const std::map<Exponents, Rational>& nf, GeneratorProducts& prods) {
  PbwElt u(prods.generators().P.pr_order);
  for (const auto& [e, c] : nf) u += prods.product(e) * c;
  return u;
}

// ---------------------------------------------------------------- center

/// Gelfand invariants G_k = sum e_{i1 i2} e_{i2 i3} ... e_{ik i1}, k = 1..kmax,
/// over the index set idx (all of 1..N for gl_N, one row for a Levi block).
inline PbwElt gelfand_invariant(const OrderPtr& o, const std::vector<int>& idx, int k) {
  PbwElt g(o);
  std::vector<int> cyc(k, 0);
  std::vector<Factor> word(k);
  std::function<void(int)> rec = [&](int t) {
    if (t == k) {
      for (int s = 0; s < k; ++s) word[s] = {cyc[s], cyc[(s + 1) % k]};
      g += PbwElt::word(o, word);
      return;
    }
    for (int v : idx) {
      cyc[t] = v;
      rec(t + 1);
    }
  };
  rec(0);
  return g;
}

inline bool commutes_with_units(const PbwElt& z, const std::vector<Factor>& units) {
  for (auto [i, j] : units)
    if (!commutator(PbwElt::unit(z.order(), i, j), z).is_zero()) return false;
  return true;
}

inline std::vector<Factor> all_units(int N) {
  std::vector<Factor> u;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) u.emplace_back(i, j);
  return u;
}

inline std::vector<PbwElt> center_generators(const OrderPtr& o, int N, int kmax) {
  require(kmax >= 1, "center_generators: kmax must be positive");
  std::vector<int> idx;
  for (int i = 1; i <= N; ++i) idx.push_back(i);
  std::vector<PbwElt> out;
  for (int k = 1; k <= kmax; ++k) {
    out.push_back(gelfand_invariant(o, idx, k));
    ensure(commutes_with_units(out.back(), all_units(N)), "Gelfand invariant is not central");
  }
  return out;
}

/// pr(z) for central z, certified as a W-element.
inline WElt pr_center(const Pyramid& P, const PbwElt& z) {
  PbwElt zz = straighten(z, P.pr_order);
  require(commutes_with_units(zz, all_units(P.N)), "pr_center: input is not central in U(gl_N)");
  return certify(P, pr(P, zz), "projection of a central element");
}

/// [w, g] = 0 for every generator g.
inline bool commutes_with_generators(const PbwElt& w, const GeneratorSet& G) {
  for (std::size_t k = 0; k < G.size(); ++k)
    if (!commutator(G.at(k).value, w).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------- PBW counting

struct PbwLevel {
  int j = 0;
  long solver_dim = 0;   ///< dimension of the membership solution space in Kazhdan degree <= j
  long symbol_count = 0; ///< monomials in centralizer symbols with sum(n_i + 2) <= j
  bool agree() const { return solver_dim == symbol_count; }
};

/// Counts multisets of centralizer basis vectors by total Kazhdan degree.
inline std::vector<long> symbol_monomial_counts(const Pyramid& P, int jmax) {
  std::vector<long> exact(jmax + 1, 0);
  exact[0] = 1;
  for (const auto& g : ge_basis(P)) {
    int w = g.degree + 2;
    for (int t = w; t <= jmax; ++t) exact[t] += exact[t - w];  // unbounded multiplicity
  }
  std::vector<long> cum(jmax + 1, 0);
  long s = 0;
  for (int t = 0; t <= jmax; ++t) cum[t] = (s += exact[t]);
  return cum;
}

/// For each j <= jmax compares the solution space of the membership system
/// inside Kazhdan degree <= j against the symbol monomial count.
inline std::vector<PbwLevel> pbw_dimension_report(const Pyramid& P, int jmax) {
  require(jmax >= 0, "pbw_dimension_report: jmax must be nonnegative");
  auto counts = symbol_monomial_counts(P, jmax);
  auto monos = up_monomials(P, jmax);
  guard(static_cast<long>(monos.size()), limits().max_matrix_dim, "PBW report unknowns");
  // pr([x, -]) preserves restricted weight, so the system splits by weight.
  std::map<std::vector<int>, std::vector<const Mono*>> by_weight;
  for (const auto& m : monos) by_weight[mono_weight(P, m)].push_back(&m);
  auto mb = m_basis(P);
  std::vector<long> nullity_at(jmax + 1, 0);  // nullity added at exact Kazhdan degree
  for (auto& [w, list] : by_weight) {
    std::stable_sort(list.begin(), list.end(),
                     [&](const Mono* a, const Mono* b) { return mono_kazhdan(P, *a) < mono_kazhdan(P, *b); });
    Echelon ech;
    detail::CoordTable ct;
    for (const Mono* m : list) {
      PbwElt u(P.pr_order);
      u.add_normal(*m, 1);
      if (!ech.insert(detail::residual_vector(P, mb, u, ct))) ++nullity_at[mono_kazhdan(P, *m)];
    }
  }
  std::vector<PbwLevel> out;
  long cum = 0;
  for (int j = 0; j <= jmax; ++j) {
    cum += nullity_at[j];
    out.push_back({j, cum, counts[j]});
  }
  return out;
}

}  // namespace wgb
