#pragma once

#include "wgb/errors.hpp"
#include "wgb/linalg.hpp"
#include "wgb/order.hpp"
#include "wgb/rational.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace wgb {

/// Coordinates in the basis eps_1..eps_N of t*.
using TWeight = std::vector<Rational>;
/// Coordinates in the basis dual to h_i = sum of e_jj over boxes j in row i.
using RestrictedWeight = std::vector<Rational>;

struct Ordering;

/// Left-aligned diagram of a weakly increasing partition. Rows are numbered
/// top to bottom, boxes row-major starting at 1. Fixes the nilpotent e and
/// the even good grading.
struct Pyramid {
  std::vector<int> parts;  ///< p_1 <= ... <= p_n
  int N = 0;
  int n = 0;
  int ell = 0;
  std::vector<int> q;      ///< q[c-1] = column height of column c
  std::vector<int> row;    ///< row[i], 1-based boxes, row[0] unused
  std::vector<int> col;
  std::vector<std::vector<int>> box;  ///< box[r][c], 1-based, 0 if absent

  /// Normal orders, shared by copies so straightening caches are reused.
  std::shared_ptr<const Ordering> pr_order, pi_order, hc_order;

  int box_at(int r, int c) const {
    if (r < 1 || r > n || c < 1 || c > parts[r - 1]) return 0;
    return box[r][c];
  }
  int good_degree(int i, int j) const { return 2 * (col[j] - col[i]); }
  bool in_p(int i, int j) const { return col[i] <= col[j]; }
  bool in_m(int i, int j) const { return col[i] > col[j]; }
  bool in_g0(int i, int j) const { return row[i] == row[j]; }
  bool in_p0(int i, int j) const { return row[i] == row[j] && col[i] <= col[j]; }
  /// Kazhdan degree of the unit e_ij: good degree plus 2.
  int kazhdan(int i, int j) const { return good_degree(i, j) + 2; }
  /// chi(e_ij) = trace(e e_ij): 1 when e_ji is a summand of e.
  int chi_unit(int i, int j) const { return (row[i] == row[j] && col[j] + 1 == col[i]) ? 1 : 0; }
  /// Sign of the restricted weight of e_ij: -1, 0 or +1.
  int weight_sign(int i, int j) const { return row[i] < row[j] ? 1 : (row[i] > row[j] ? -1 : 0); }

  std::string label() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? "," : "") << parts[k];
    return os.str();
  }
};

namespace detail {

template <class Key>
OrderPtr make_order(const std::string& name, int N, Key key) {
  auto o = std::make_shared<Ordering>();
  o->name = name;
  o->N = N;
  std::vector<std::pair<decltype(key(1, 1)), UnitCode>> all;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) all.emplace_back(key(i, j), unit_code(i, j));
  std::sort(all.begin(), all.end());
  for (std::size_t r = 0; r < all.size(); ++r) o->rank[all[r].second] = static_cast<int>(r);
  return o;
}

}  // namespace detail

/// Validates the parts and fills in the box geometry.
inline Pyramid build_pyramid(const std::vector<int>& parts) {
  if (parts.empty()) throw ValidationError("partition is empty");
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] < 1)
      throw ValidationError("partition entry at index " + std::to_string(k) + " is not positive");
    if (k > 0 && parts[k] < parts[k - 1])
      throw ValidationError("partition decreases at index " + std::to_string(k) +
                            " (parts must be weakly increasing)");
  }
  Pyramid P;
  P.parts = parts;
  P.n = static_cast<int>(parts.size());
  for (int p : parts) P.N += p;
  if (P.N > kMaxN) throw ValidationError("N = " + std::to_string(P.N) + " exceeds the supported maximum 16");
  P.ell = parts.back();
  P.q.assign(P.ell, 0);
  for (int c = 1; c <= P.ell; ++c)
    for (int p : parts)
      if (p >= c) ++P.q[c - 1];
  P.row.assign(P.N + 1, 0);
  P.col.assign(P.N + 1, 0);
  P.box.assign(P.n + 1, std::vector<int>(P.ell + 1, 0));
  int b = 0;
  for (int r = 1; r <= P.n; ++r)
    for (int c = 1; c <= parts[r - 1]; ++c) {
      ++b;
      P.row[b] = r;
      P.col[b] = c;
      P.box[r][c] = b;
    }
  const Pyramid& G = P;
  P.pr_order = detail::make_order("PR", P.N, [&](int i, int j) {
    return std::make_tuple(-G.good_degree(i, j), i, j);
  });
  auto pr = P.pr_order;
  P.pi_order = detail::make_order("PI", P.N, [&](int i, int j) {
    return std::make_tuple(G.weight_sign(i, j) + 1, pr->rank[unit_code(i, j)], 0);
  });
  P.hc_order = detail::make_order("HC", P.N, [](int i, int j) {
    return std::make_tuple(i > j ? 0 : (i == j ? 1 : 2), i, j);
  });
  return P;
}

/// Parses "1,2,4".
inline std::vector<int> parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ValidationError("partition entry '" + tok + "' is not an integer");
    }
    if (used != tok.size() && tok.find_first_not_of(" \t", used) != std::string::npos)
      throw ValidationError("partition entry '" + tok + "' is not an integer");
    parts.push_back(v);
  }
  return parts;
}

/// All weakly increasing partitions of N.
inline std::vector<std::vector<int>> partitions_of(int N) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int lo) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = lo; p <= left; ++p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, N, 1);
  return out;
}

// ---------------------------------------------------------------- LieElt

/// Finite combination of matrix units plus a scalar part.
struct LieElt {
  std::map<std::pair<int, int>, Rational> coeffs;
  Rational scalar = 0;

  static LieElt unit(int i, int j, const Rational& c = 1) {
    LieElt x;
    x.add(i, j, c);
    return x;
  }
  void add(int i, int j, const Rational& c) {
    auto& v = coeffs[{i, j}];
    v += c;
    if (sgn(v) == 0) coeffs.erase({i, j});
  }
  LieElt& operator+=(const LieElt& o) {
    for (const auto& [k, c] : o.coeffs) add(k.first, k.second, c);
    scalar += o.scalar;
    return *this;
  }
  LieElt operator*(const Rational& c) const {
    LieElt r;
    if (sgn(c) == 0) return r;
    for (const auto& [k, v] : coeffs) r.coeffs[k] = v * c;
    r.scalar = scalar * c;
    return r;
  }
  bool is_zero() const { return coeffs.empty() && sgn(scalar) == 0; }
  bool operator==(const LieElt& o) const { return coeffs == o.coeffs && scalar == o.scalar; }
};

/// Matrix commutator; scalar parts are central and drop out.
inline LieElt bracket(const LieElt& x, const LieElt& y) {
  LieElt r;
  for (const auto& [a, u] : x.coeffs)
    for (const auto& [b, v] : y.coeffs) {
      Rational c = u * v;
      if (a.second == b.first) r.add(a.first, b.second, c);
      if (b.second == a.first) r.add(b.first, a.second, -c);
    }
  return r;
}

inline LieElt nilpotent_e(const Pyramid& P) {
  LieElt e;
  for (int i = 1; i <= P.N; ++i) {
    int j = P.box_at(P.row[i], P.col[i] + 1);
    if (j) e.add(i, j, 1);
  }
  return e;
}

inline int good_degree(const Pyramid& P, int i, int j) { return P.good_degree(i, j); }

/// chi(x) = trace(e x); the scalar part of x is ignored.
inline Rational chi(const Pyramid& P, const LieElt& x) {
  Rational t = 0;
  for (const auto& [k, c] : x.coeffs)
    if (P.chi_unit(k.first, k.second)) t += c;
  return t;
}

inline RestrictedWeight restricted_weight(const Pyramid& P, int i, int j) {
  RestrictedWeight w(P.n, Rational(0));
  w[P.row[i] - 1] += 1;
  w[P.row[j] - 1] -= 1;
  return w;
}

/// Restriction of a t-weight to t^e.
inline RestrictedWeight restrict_weight(const Pyramid& P, const TWeight& w) {
  RestrictedWeight r(P.n, Rational(0));
  for (int j = 1; j <= P.N; ++j) r[P.row[j] - 1] += w[j - 1];
  return r;
}

/// Jordan block sizes of a matrix given as LieElt, sorted increasingly.
inline std::vector<int> jordan_type(const LieElt& x, int N) {
  DenseMatrix a(N, std::vector<Rational>(N, Rational(0)));
  for (const auto& [k, c] : x.coeffs) a[k.first - 1][k.second - 1] = c;
  std::vector<int> rk{N};
  DenseMatrix pw = a;
  while (rk.back() > 0) {
    int r = rank_dense(pw, N);
    if (r == rk.back()) throw InternalError("jordan_type: matrix is not nilpotent");
    rk.push_back(r);
    DenseMatrix nx(N, std::vector<Rational>(N, Rational(0)));
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        if (sgn(pw[i][k]) == 0) continue;
        for (int j = 0; j < N; ++j) nx[i][j] += pw[i][k] * a[k][j];
      }
    pw = std::move(nx);
  }
  // Number of blocks of size >= s is rk[s-1] - rk[s].
  std::vector<int> sizes;
  for (std::size_t s = 1; s < rk.size(); ++s) {
    int at_least = rk[s - 1] - rk[s];
    int at_least_next = s + 1 < rk.size() ? rk[s] - rk[s + 1] : 0;
    for (int k = 0; k < at_least - at_least_next; ++k) sizes.push_back(static_cast<int>(s));
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// ------------------------------------------------------- special weights

struct SpecialWeights {
  TWeight eta, o, rho, gamma, delta, epsilon;
};

inline SpecialWeights special_weights(const Pyramid& P) {
  const int N = P.N;
  SpecialWeights s;
  s.eta.assign(N, 0);
  s.o.assign(N, 0);
  s.rho.assign(N, 0);
  s.gamma.assign(N, 0);
  s.delta.assign(N, 0);
  s.epsilon.assign(N, 0);
  for (int i = 1; i <= N; ++i) {
    int tail = 0;
    for (int c = P.col[i]; c <= P.ell; ++c) tail += P.q[c - 1];
    s.eta[i - 1] = P.n - tail;
    s.o[i - 1] = make_rational(-(N - 1), 2);
    s.rho[i - 1] = 1 - i;
  }
  // Sum of restrictions-negative m units: e_ab with col(a) > col(b), row(a) > row(b).
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b)
      if (P.in_m(a, b) && P.row[a] > P.row[b]) {
        s.gamma[a - 1] += 1;
        s.gamma[b - 1] -= 1;
      }
  for (int j = 1; j <= N; ++j) {
    int r = P.row[j], c = P.col[j];
    int nw = 0, no = 0, ne = 0, ea = 0, so = 0;
    for (int k = 1; k <= N; ++k) {
      if (P.row[k] < r) {
        if (P.col[k] < c) ++nw;
        else if (P.col[k] == c) ++no;
        else ++ne;
      } else if (P.row[k] == r) {
        if (P.col[k] > c) ++ea;
      } else if (P.col[k] == c) {
        ++so;
      }
    }
    s.delta[j - 1] = nw + no + ne + ea + so + 1 - P.n;
    s.epsilon[j - 1] = -(nw + no + ne + ea);
  }
  return s;
}

/// mu <= lambda in the dominance order of the standard positive system.
inline bool dominance_leq(const RestrictedWeight& mu, const RestrictedWeight& lambda) {
  if (mu.size() != lambda.size()) throw ValidationError("dominance_leq: length mismatch");
  Rational s = 0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    s += lambda[k] - mu[k];
    if (k + 1 < mu.size() && (!is_integer(s) || sgn(s) < 0)) return false;
  }
  return sgn(s) == 0;
}

}  // namespace wgb
