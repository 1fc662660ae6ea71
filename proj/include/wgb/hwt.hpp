#pragma once

#include "wgb/errors.hpp"
#include "wgb/linalg.hpp"
#include "wgb/pbw.hpp"
#include "wgb/pyramid.hpp"
#include "wgb/walg.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wgb {

// ------------------------------------------------------- Cartan quotient

/// S_{-gamma}(pi(u)) for u in U(p) of weight 0, without certification.
inline PbwElt pi_minus_gamma_unchecked(const Pyramid& P, const PbwElt& u) {
  return straighten(shift(pi0(P, u), negate(special_weights(P).gamma)), P.pr_order);
}

/// Cartan quotient U(g,e)_0 -> U(g_0,e). Output certified for (g_0, e).
inline PbwElt pi_minus_gamma(const Pyramid& P, const WElt& u) {
  require(u.certified(), "pi_minus_gamma: input is not a certified W-element");
  require(has_zero_weight(P, u.value), "pi_minus_gamma: input does not have restricted weight 0");
  PbwElt r = pi_minus_gamma_unchecked(P, u.value);
  certify(P, r, "image under the Cartan quotient", true);
  return r;
}

/// S_{-eps}(xi(u)) for u in U(g_0,e); asserts invariance under permutations within rows.
inline PbwElt xi_minus_eps(const Pyramid& P, const PbwElt& u0) {
  require(in_Ug0(P, u0), "xi_minus_eps: input is not in U(g_0)");
  PbwElt r = shift(xi(P, u0), negate(special_weights(P).epsilon));
  ensure(is_row_symmetric(P, r), "xi_minus_eps: result is not symmetric within rows");
  return r;
}

// -------------------------------------------------- Harish-Chandra maps

/// rho_0: half the roots restricting to positive restricted roots, plus half
/// the positive roots inside g_0, plus the origin shift o.
inline TWeight rho0(const Pyramid& P) {
  TWeight r = special_weights(P).o;
  Rational half = make_rational(1, 2);
  for (int a = 1; a <= P.N; ++a)
    for (int b = 1; b <= P.N; ++b)
      if (P.row[a] < P.row[b] || (P.row[a] == P.row[b] && a < b)) {
        r[a - 1] += half;
        r[b - 1] -= half;
      }
  return r;
}

/// Psi: keep the pure-t part in the order with upper triangular factors
/// rightmost, then shift by -rho (rho includes the origin shift).
inline PbwElt hc_psi(const Pyramid& P, const PbwElt& z) {
  PbwElt zz = straighten(z, P.hc_order);
  require(commutes_with_units(zz, all_units(P.N)), "hc_psi: input is not central");
  PbwElt r(P.hc_order);
  for (const auto& [m, c] : zz.terms())
    if (all_factors(m, [](int i, int j) { return i == j; })) r.add_normal(m, c);
  r = shift(r, negate(special_weights(P).rho));
  ensure(is_row_symmetric(P, r, true), "hc_psi: result is not symmetric");
  return r;
}

inline std::vector<Factor> levi_units(const Pyramid& P) {
  std::vector<Factor> u;
  for (auto f : all_units(P.N))
    if (P.in_g0(f.first, f.second)) u.push_back(f);
  return u;
}

/// Psi_0 for the Levi g_0.
inline PbwElt hc_psi0(const Pyramid& P, const PbwElt& z0) {
  PbwElt zz = straighten(z0, P.hc_order);
  require(in_Ug0(P, zz), "hc_psi0: input is not in U(g_0)");
  require(commutes_with_units(zz, levi_units(P)), "hc_psi0: input is not central in U(g_0)");
  PbwElt r(P.hc_order);
  for (const auto& [m, c] : zz.terms())
    if (all_factors(m, [](int i, int j) { return i == j; })) r.add_normal(m, c);
  r = shift(r, negate(rho0(P)));
  ensure(is_row_symmetric(P, r), "hc_psi0: result is not symmetric within rows");
  return r;
}

/// Gelfand invariant of the row-i block of g_0.
inline PbwElt block_gelfand(const Pyramid& P, int row, int k) {
  std::vector<int> idx;
  for (int j = 1; j <= P.N; ++j)
    if (P.row[j] == row) idx.push_back(j);
  return gelfand_invariant(P.pr_order, idx, k);
}

inline int poly_degree(const PbwElt& f) {
  int d = -1;
  for (const auto& [m, c] : f.terms()) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

inline PbwElt homogeneous_part(const PbwElt& f, int d) {
  PbwElt r(f.order());
  for (const auto& [m, c] : f.terms())
    if (static_cast<int>(m.size()) == d) r.add_normal(m, c);
  return r;
}

struct EdSquareRow {
  int k = 0;
  PbwElt lhs;  ///< pi_{-gamma}(Pr(G_k))
  PbwElt rhs;  ///< Pr_0(c(G_k))
  bool equal = false;
};

/// Finds z0 in Z(g_0) with Psi_0(z0) = target by peeling off top degrees
/// with products of block Gelfand invariants.
inline PbwElt invert_psi0(const Pyramid& P, const PbwElt& target) {
  // Psi_0 of each block invariant, indexed (row, power).
  std::map<std::pair<int, int>, PbwElt> inv, img;
  for (int i = 1; i <= P.n; ++i)
    for (int k = 1; k <= P.parts[i - 1]; ++k) {
      inv[{i, k}] = block_gelfand(P, i, k);
      img[{i, k}] = hc_psi0(P, inv[{i, k}]);
    }
  std::vector<std::pair<int, int>> keys;
  for (auto& [key, v] : inv) keys.push_back(key);

  PbwElt rem = straighten(target, P.hc_order);
  PbwElt z0(P.pr_order);
  int last = 1 << 30;
  while (!rem.is_zero()) {
    int D = poly_degree(rem);
    ensure(D < last, "invert_psi0: degree did not drop");
    last = D;
    // Multisets of (row, power) with total power D.
    std::vector<std::vector<int>> combos;  // indices into keys, nondecreasing
    std::vector<int> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
      if (left == 0) {
        combos.push_back(cur);
        return;
      }
      for (std::size_t k = from; k < keys.size(); ++k)
        if (keys[k].second <= left) {
          cur.push_back(static_cast<int>(k));
          rec(k, left - keys[k].second);
          cur.pop_back();
        }
    };
    rec(0, D);
    std::vector<PbwElt> prod_img;
    for (const auto& cb : combos) {
      PbwElt p = PbwElt::scalar(P.hc_order, 1);
      for (int k : cb) p = p * img[keys[k]];
      prod_img.push_back(std::move(p));
    }
    // Match the top homogeneous component.
    std::map<Mono, int> row_of;
    auto top = homogeneous_part(rem, D);
    for (const auto& [m, c] : top.terms()) row_of.try_emplace(m, static_cast<int>(row_of.size()));
    std::vector<PbwElt> tops;
    for (const auto& p : prod_img) {
      tops.push_back(homogeneous_part(p, D));
      for (const auto& [m, c] : tops.back().terms()) row_of.try_emplace(m, static_cast<int>(row_of.size()));
    }
    std::vector<std::pair<SparseVec, Rational>> eqs(row_of.size());
    for (std::size_t s = 0; s < tops.size(); ++s)
      for (const auto& [m, c] : tops[s].terms()) eqs[row_of[m]].first.emplace_back(static_cast<int>(s), c);
    for (const auto& [m, c] : top.terms()) eqs[row_of[m]].second = c;
    auto sol = solve_canonical(eqs, static_cast<int>(tops.size()));
    ensure(sol.has_value(), "invert_psi0: top component is not a polynomial in block power sums");
    for (std::size_t s = 0; s < combos.size(); ++s) {
      if (sgn((*sol)[s]) == 0) continue;
      PbwElt g = PbwElt::scalar(P.pr_order, (*sol)[s]);
      for (int k : combos[s]) g = g * inv[keys[k]];
      z0 += g;
      rem -= prod_img[s] * (*sol)[s];
    }
  }
  return z0;
}

/// Checks pi_{-gamma}(Pr(G_k)) = Pr_0(c(G_k)) for k = 1..kmax.
inline std::vector<EdSquareRow> verify_ed_square(const Pyramid& P, int kmax) {
  std::vector<EdSquareRow> out;
  auto gs = center_generators(P.pr_order, P.N, kmax);
  for (int k = 1; k <= kmax; ++k) {
    const PbwElt& z = gs[k - 1];
    EdSquareRow row;
    row.k = k;
    row.lhs = pi_minus_gamma(P, pr_center(P, z));
    PbwElt c = invert_psi0(P, hc_psi(P, z));
    row.rhs = straighten(pr(P, c), P.pr_order);
    row.equal = row.lhs == row.rhs;
    out.push_back(std::move(row));
  }
  return out;
}

// ------------------------------------------------- highest weight data

/// Value of xi_{-eps}(pi_{-gamma}(u)) at lambda.
inline Rational highest_weight_scalar(const Pyramid& P, const TWeight& lambda, const WElt& u) {
  require(static_cast<int>(lambda.size()) == P.N, "highest_weight_scalar: weight has wrong length");
  return evaluate(xi_minus_eps(P, pi_minus_gamma(P, u)), lambda);
}

/// Same as highest_weight_scalar but trusts the caller on membership.
inline Rational highest_weight_scalar_unchecked(const Pyramid& P, const TWeight& lambda, const PbwElt& u) {
  return evaluate(xi_minus_eps(P, pi_minus_gamma_unchecked(P, u)), lambda);
}

/// lambda restricted to t^e as a highest weight: lambda(h_i) = sum over row i of (a_j - eps_j).
inline RestrictedWeight highest_restricted_weight(const Pyramid& P, const TWeight& lambda) {
  auto eps = special_weights(P).epsilon;
  RestrictedWeight r(P.n, Rational(0));
  for (int j = 1; j <= P.N; ++j) r[P.row[j] - 1] += lambda[j - 1] - eps[j - 1];
  return r;
}

/// Height of a positive restricted root eps_a - eps_b (a < b) is b - a.
inline int root_height(const RestrictedWeight& w) {
  int h = 0;
  Rational s = 0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    s += w[k];
    h += static_cast<int>(to_long(s));
  }
  return h;
}

// ------------------------------------------------------------- Verma

struct ActionBlock {
  RestrictedWeight source, target;
  DenseMatrix matrix;     ///< rows: target basis, columns: source basis
  bool boundary = false;  ///< target outside the truncation; matrix left empty
};

/// Depth-truncated model of the Verma module M(Lambda, e).
struct VermaSlice {
  Pyramid P;
  TWeight lambda_t;
  RestrictedWeight lambda;
  int depth = 0;
  std::vector<int> heights;                     ///< height of gamma_i (weight of E_i)
  std::vector<RestrictedWeight> gammas;
  std::vector<RestrictedWeight> weights;        ///< by depth, then lexicographic
  std::map<RestrictedWeight, int> weight_depth;
  std::map<RestrictedWeight, std::vector<Exponents>> basis;  ///< F-exponent vectors
  std::vector<Rational> h_scalars;              ///< eigenvalues of H_i on the highest weight vector
  std::vector<std::map<RestrictedWeight, ActionBlock>> actions;  ///< per generator, keyed by source
  std::map<RestrictedWeight, int> m_dims, r_dims, l_dims;

  int index_of(const RestrictedWeight& mu, const Exponents& a) const {
    const auto& b = basis.at(mu);
    auto it = std::lower_bound(b.begin(), b.end(), a);
    return (it != b.end() && *it == a) ? static_cast<int>(it - b.begin()) : -1;
  }
};

namespace detail {

inline RestrictedWeight add_scaled(RestrictedWeight a, const RestrictedWeight& b, long k) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i] * k;
  return a;
}

/// Action of a W-element X of restricted weight wt on the basis of M_mu,
/// returned as a matrix into M_{mu+wt}. prods must be built on the slice's generators.
inline DenseMatrix act(const VermaSlice& V, GeneratorProducts& prods, const PbwElt& X, const RestrictedWeight& mu,
                       const RestrictedWeight& target) {
  const GeneratorSet& G = prods.generators();
  const std::size_t m = G.F.size(), l = G.H.size();
  const auto& src = V.basis.at(mu);
  const auto& dst = V.basis.at(target);
  DenseMatrix A(dst.size(), std::vector<Rational>(src.size(), Rational(0)));
  for (std::size_t col = 0; col < src.size(); ++col) {
    Exponents full(G.size(), 0);
    for (std::size_t i = 0; i < m; ++i) full[i] = src[col][i];
    PbwElt xf = X * prods.product(full);
    for (const auto& [e, c] : wpbw_normal_form(xf, prods)) {
      bool has_e = false;
      for (std::size_t i = 0; i < m; ++i)
        if (e[m + l + i] != 0) has_e = true;
      if (has_e) continue;
      Rational s = c;
      for (std::size_t h = 0; h < l; ++h)
        for (int p = 0; p < e[m + h]; ++p) s *= V.h_scalars[h];
      if (sgn(s) == 0) continue;
      Exponents a(e.begin(), e.begin() + static_cast<long>(m));
      int row = V.index_of(target, a);
      ensure(row >= 0, "Verma action left the expected weight space");
      A[row][col] += s;
    }
  }
  return A;
}

inline std::vector<Rational> mat_vec(const DenseMatrix& A, const std::vector<Rational>& v) {
  std::vector<Rational> r(A.size(), Rational(0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(v[j]) != 0 && sgn(A[i][j]) != 0) r[i] += A[i][j] * v[j];
  return r;
}

}  // namespace detail

/// Builds the slice: weights with depth <= depth, action matrices of every
/// generator between interior weight spaces, and the radical ranks.
inline VermaSlice build_verma(const GeneratorSet& G, const TWeight& lambda_t, int depth) {
  const Pyramid& P = G.P;
  require(depth >= 0, "build_verma: depth must be nonnegative");
  if (depth > 64) throw ResourceLimitError("build_verma: depth exceeds the hard cap 64");
  require(static_cast<int>(lambda_t.size()) == P.N, "build_verma: weight has wrong length");
  VermaSlice V;
  V.P = P;
  V.lambda_t = lambda_t;
  V.lambda = highest_restricted_weight(P, lambda_t);
  V.depth = depth;
  const std::size_t m = G.F.size();
  for (const auto& e : G.E) {
    V.gammas.push_back(e.symbol.weight);
    V.heights.push_back(root_height(e.symbol.weight));
  }
  // F-exponent vectors by weight.
  Exponents a(m, 0);
  long total = 0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == m) {
      RestrictedWeight mu = V.lambda;
      for (std::size_t k = 0; k < m; ++k) mu = detail::add_scaled(mu, V.gammas[k], -a[k]);
      V.basis[mu].push_back(a);
      V.weight_depth[mu] = used;
      guard(++total, limits().max_matrix_dim, "Verma basis");
      return;
    }
    for (a[i] = 0; used + a[i] * V.heights[i] <= depth; ++a[i]) rec(i + 1, used + a[i] * V.heights[i]);
    a[i] = 0;
  };
  rec(0, 0);
  for (auto& [mu, b] : V.basis) {
    std::sort(b.begin(), b.end());
    V.weights.push_back(mu);
    V.m_dims[mu] = static_cast<int>(b.size());
  }
  std::stable_sort(V.weights.begin(), V.weights.end(),
                   [&](const auto& x, const auto& y) { return V.weight_depth[x] < V.weight_depth[y]; });
  for (const auto& h : G.H) V.h_scalars.push_back(highest_weight_scalar_unchecked(P, lambda_t, h.value));

  GeneratorProducts prods(G);
  V.actions.resize(G.size());
  for (std::size_t g = 0; g < G.size(); ++g) {
    const auto& gen = G.at(g);
    for (const auto& mu : V.weights) {
      ActionBlock blk;
      blk.source = mu;
      blk.target = detail::add_scaled(mu, gen.symbol.weight, 1);
      if (!V.basis.count(blk.target)) {
        // Either outside the cone (the zero map) or beyond the cutoff.
        blk.boundary = dominance_leq(blk.target, V.lambda);
        V.actions[g].emplace(mu, std::move(blk));
        continue;
      }
      blk.matrix = detail::act(V, prods, gen.value, mu, blk.target);
      V.actions[g].emplace(mu, std::move(blk));
    }
  }
  // Radical: w in R_mu iff the lambda-component of E^c w vanishes for all
  // E-monomials c of weight lambda - mu. Only E-probes are needed: any
  // element of U(g,e) mapping M_mu to M_lambda has a normal form whose F-part
  // must be trivial, since every weight of M is below lambda.
  const std::size_t l = G.H.size();
  for (const auto& mu : V.weights) {
    const auto& cs = V.basis.at(mu);  // E-exponents of weight lambda - mu match these
    const int dim = V.m_dims[mu];
    DenseMatrix stack;
    for (const auto& c : cs) {
      std::vector<Rational> row(dim, Rational(0));
      for (int col = 0; col < dim; ++col) {
        std::vector<Rational> v(dim, Rational(0));
        v[col] = 1;
        RestrictedWeight cur = mu;
        for (std::size_t i = m; i-- > 0;)
          for (int p = 0; p < c[i]; ++p) {
            const auto& blk = V.actions[m + l + i].at(cur);
            v = detail::mat_vec(blk.matrix, v);
            cur = blk.target;
          }
        ensure(cur == V.lambda && v.size() == 1, "radical probe did not return to the highest weight");
        row[col] = v[0];
      }
      stack.push_back(std::move(row));
    }
    int rk = rank_dense(stack, dim);
    V.r_dims[mu] = dim - rk;
    V.l_dims[mu] = rk;
  }
  ensure(V.l_dims[V.lambda] == 1, "highest weight space of the irreducible quotient is not one-dimensional");
  return V;
}

/// Matrix of a weight-0 W-element on M_mu.
inline DenseMatrix act_weight_zero(const VermaSlice& V, GeneratorProducts& prods, const PbwElt& X,
                                   const RestrictedWeight& mu) {
  return detail::act(V, prods, X, mu, mu);
}

inline DenseMatrix act_weight_zero(const VermaSlice& V, const GeneratorSet& G, const PbwElt& X,
                                   const RestrictedWeight& mu) {
  GeneratorProducts prods(G);
  return act_weight_zero(V, prods, X, mu);
}

inline int max_height(const VermaSlice& V) {
  int h = 0;
  for (int x : V.heights) h = std::max(h, x);
  return h;
}

inline long total_l_dim(const VermaSlice& V) {
  long t = 0;
  for (const auto& [mu, d] : V.l_dims) t += d;
  return t;
}

struct ProbeVerdict {
  bool closed = false;
  long total_dim = 0;  ///< sum of l_dims when closed
  int depth = 0;
};

/// Closed when the irreducible quotient vanishes on the whole shell of
/// depths (depth - max height, depth]: every deeper weight space is reached
/// from that shell by F-moves, so it vanishes too.
inline ProbeVerdict finite_dim_probe(const VermaSlice& V) {
  ProbeVerdict pv;
  pv.depth = V.depth;
  int h = max_height(V);
  bool shell_zero = true;
  for (const auto& mu : V.weights) {
    int d = V.weight_depth.at(mu);
    if (d > V.depth - h && d <= V.depth && V.l_dims.at(mu) != 0) shell_zero = false;
  }
  pv.closed = shell_zero;
  if (pv.closed) pv.total_dim = total_l_dim(V);
  return pv;
}

inline ProbeVerdict finite_dim_probe(const GeneratorSet& G, const TWeight& lambda_t, int depth_max) {
  return finite_dim_probe(build_verma(G, lambda_t, depth_max));
}

struct CentralValue {
  int k = 0;
  Rational via_highest_weight;  ///< xi_{-eps} pi_{-gamma} Pr(G_k) at lambda
  Rational via_psi;             ///< Psi(G_k) at lambda
  Rational via_verma;           ///< eigenvalue of Pr(G_k) on the highest weight vector
  bool annihilates = false;     ///< Pr(G_k) - value kills every basis vector of the slice
};

/// Central character on G_1..G_kmax, computed three ways, plus the
/// annihilation check on the slice up to check_depth.
inline std::vector<CentralValue> central_character(const GeneratorSet& G, const TWeight& lambda_t, int kmax,
                                                   int check_depth = 4) {
  const Pyramid& P = G.P;
  VermaSlice V = build_verma(G, lambda_t, check_depth);
  GeneratorProducts prods(G);
  std::vector<CentralValue> out;
  auto zs = center_generators(P.pr_order, P.N, kmax);
  for (int k = 1; k <= kmax; ++k) {
    CentralValue cv;
    cv.k = k;
    WElt w = pr_center(P, zs[k - 1]);
    cv.via_highest_weight = highest_weight_scalar(P, lambda_t, w);
    cv.via_psi = evaluate(hc_psi(P, zs[k - 1]), lambda_t);
    bool ok = true;
    for (const auto& mu : V.weights) {
      DenseMatrix A = act_weight_zero(V, prods, w.value, mu);
      if (mu == V.lambda) cv.via_verma = A[0][0];
      for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
          if (A[i][j] != (i == j ? cv.via_highest_weight : Rational(0))) ok = false;
    }
    cv.annihilates = ok;
    out.push_back(std::move(cv));
  }
  return out;
}

}  // namespace wgb
