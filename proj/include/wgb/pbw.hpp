#pragma once

#include "wgb/errors.hpp"
#include "wgb/order.hpp"
#include "wgb/pyramid.hpp"
#include "wgb/rational.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace wgb {

using Factor = std::pair<int, int>;

inline Mono mono_of(const std::vector<Factor>& f) {
  Mono m;
  for (auto [i, j] : f) m.push_back(static_cast<char>(unit_code(i, j)));
  return m;
}

inline std::vector<Factor> factors_of(const Mono& m) {
  std::vector<Factor> f;
  for (char ch : m) {
    auto c = static_cast<UnitCode>(ch);
    f.emplace_back(unit_i(c), unit_j(c));
  }
  return f;
}

namespace detail {

inline void accumulate(Terms& into, const Mono& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = into.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) into.erase(it);
  }
}

inline void accumulate(Terms& into, const Terms& from, const Rational& c) {
  for (const auto& [m, v] : from) accumulate(into, m, v * c);
}

/// Normal form of x * M where M is already normal in order o.
/// Rewrites x m0 = m0 x + [x, m0] and recurses; memoized per order.
inline std::shared_ptr<const Terms> left_mul(const Ordering& o, UnitCode x, const Mono& M) {
  if (M.empty() || o.le(x, static_cast<UnitCode>(M[0]))) {
    auto t = std::make_shared<Terms>();
    Mono r;
    r.reserve(M.size() + 1);
    r.push_back(static_cast<char>(x));
    r += M;
    t->emplace(std::move(r), Rational(1));
    return t;
  }
  Mono key;
  key.reserve(M.size() + 1);
  key.push_back(static_cast<char>(x));
  key += M;
  {
    std::lock_guard<std::mutex> lk(o.mu);
    auto it = o.memo.find(key);
    if (it != o.memo.end()) return it->second;
  }
  const auto m0 = static_cast<UnitCode>(M[0]);
  const Mono rest = M.substr(1);
  auto res = std::make_shared<Terms>();
  auto inner = left_mul(o, x, rest);
  for (const auto& [m, c] : *inner) accumulate(*res, *left_mul(o, m0, m), c);
  const int a = unit_i(x), b = unit_j(x), cc = unit_i(m0), d = unit_j(m0);
  if (b == cc) accumulate(*res, *left_mul(o, unit_code(a, d), rest), Rational(1));
  if (d == a) accumulate(*res, *left_mul(o, unit_code(cc, b), rest), Rational(-1));
  guard(static_cast<long>(res->size()), limits().max_terms, "straightening result");
  std::lock_guard<std::mutex> lk(o.mu);
  auto [it, fresh] = o.memo.emplace(std::move(key), res);
  return it->second;
}

/// Normal form of (word) * M with M normal.
inline Terms word_times(const Ordering& o, const Mono& word, const Mono& M) {
  Terms cur;
  cur.emplace(M, Rational(1));
  for (auto k = word.size(); k-- > 0;) {
    Terms next;
    const auto x = static_cast<UnitCode>(word[k]);
    for (const auto& [m, c] : cur) accumulate(next, *left_mul(o, x, m), c);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

/// Element of U(gl_N) in normal form for one named order.
class PbwElt {
 public:
  PbwElt() = default;
  explicit PbwElt(OrderPtr o) : order_(std::move(o)) {}

  static PbwElt scalar(OrderPtr o, const Rational& c) {
    PbwElt r(std::move(o));
    detail::accumulate(r.terms_, Mono(), c);
    return r;
  }
  static PbwElt unit(OrderPtr o, int i, int j, const Rational& c = 1) {
    PbwElt r(std::move(o));
    detail::accumulate(r.terms_, mono_of({{i, j}}), c);
    return r;
  }
  /// c times an arbitrary word of matrix units, straightened.
  static PbwElt word(OrderPtr o, const std::vector<Factor>& f, const Rational& c = 1) {
    PbwElt r(o);
    detail::accumulate(r.terms_, detail::word_times(*o, mono_of(f), Mono()), c);
    return r;
  }

  const OrderPtr& order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c times a monomial assumed normal in this order.
  void add_normal(const Mono& m, const Rational& c) { detail::accumulate(terms_, m, c); }

  Rational coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coeff(Mono()); }

  /// Terms sorted lexicographically by factor list.
  std::vector<std::pair<Mono, Rational>> sorted_terms() const {
    std::vector<std::pair<Mono, Rational>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  PbwElt& operator+=(const PbwElt& o) {
    adopt(o);
    detail::accumulate(terms_, o.terms_, Rational(1));
    return *this;
  }
  PbwElt& operator-=(const PbwElt& o) {
    adopt(o);
    detail::accumulate(terms_, o.terms_, Rational(-1));
    return *this;
  }
  PbwElt& operator*=(const Rational& c) {
    if (sgn(c) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  friend PbwElt operator+(PbwElt a, const PbwElt& b) { return a += b; }
  friend PbwElt operator-(PbwElt a, const PbwElt& b) { return a -= b; }
  friend PbwElt operator*(PbwElt a, const Rational& c) { return a *= c; }
  friend PbwElt operator*(const Rational& c, PbwElt a) { return a *= c; }
  PbwElt operator-() const { return (*this) * Rational(-1); }

  friend PbwElt operator*(const PbwElt& a, const PbwElt& b) {
    PbwElt r = a.is_zero() ? PbwElt(b.order_) : PbwElt(a.order_);
    if (a.is_zero() || b.is_zero()) return r;
    a.check_same(b);
    const Ordering& o = *a.order_;
    for (const auto& [mb, cb] : b.terms_) {
      for (const auto& [ma, ca] : a.terms_) {
        Rational c = ca * cb;
        detail::accumulate(r.terms_, detail::word_times(o, ma, mb), c);
      }
    }
    return r;
  }

  /// Equality of the represented elements; re-straightens when orders differ.
  bool equals(const PbwElt& o) const;
  bool operator==(const PbwElt& o) const { return equals(o); }

 private:
  void adopt(const PbwElt& o) {
    if (!order_) order_ = o.order_;
    else if (o.order_ && !o.terms_.empty()) check_same(o);
  }
  void check_same(const PbwElt& o) const {
    if (!order_ || !o.order_ || !order_->same_as(*o.order_))
      throw InternalError("PbwElt arithmetic across different normal orders");
  }

  OrderPtr order_;
  Terms terms_;
};

/// Unique normal form of u in the target order.
inline PbwElt straighten(const PbwElt& u, const OrderPtr& target) {
  if (u.order() && u.order()->same_as(*target)) {
    PbwElt r(target);
    r += u;
    return r;
  }
  PbwElt r(target);
  for (const auto& [m, c] : u.terms())
    for (const auto& [w, k] : detail::word_times(*target, m, Mono())) r.add_normal(w, k * c);
  return r;
}

inline bool PbwElt::equals(const PbwElt& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  if (order_->same_as(*o.order_)) return terms_ == o.terms_;
  return straighten(o, order_).terms_ == terms_;
}

inline PbwElt commutator(const PbwElt& x, const PbwElt& u) { return x * u - u * x; }

inline PbwElt from_lie(const OrderPtr& o, const LieElt& x) {
  PbwElt r = PbwElt::scalar(o, x.scalar);
  for (const auto& [k, c] : x.coeffs) r += PbwElt::unit(o, k.first, k.second, c);
  return r;
}

// ------------------------------------------------------- monomial data

inline int mono_good_degree(const Pyramid& P, const Mono& m) {
  int d = 0;
  for (char ch : m) d += P.good_degree(unit_i(static_cast<UnitCode>(ch)), unit_j(static_cast<UnitCode>(ch)));
  return d;
}

inline int mono_kazhdan(const Pyramid& P, const Mono& m) {
  return mono_good_degree(P, m) + 2 * static_cast<int>(m.size());
}

/// Integer restricted weight of a monomial.
inline std::vector<int> mono_weight(const Pyramid& P, const Mono& m) {
  std::vector<int> w(P.n, 0);
  for (char ch : m) {
    auto c = static_cast<UnitCode>(ch);
    ++w[P.row[unit_i(c)] - 1];
    --w[P.row[unit_j(c)] - 1];
  }
  return w;
}

inline RestrictedWeight to_restricted(const std::vector<int>& w) {
  RestrictedWeight r;
  for (int x : w) r.emplace_back(x);
  return r;
}

template <class Pred>
bool all_factors(const Mono& m, Pred pred) {
  for (char ch : m) {
    auto c = static_cast<UnitCode>(ch);
    if (!pred(unit_i(c), unit_j(c))) return false;
  }
  return true;
}

inline bool in_Up(const Pyramid& P, const PbwElt& u) {
  for (const auto& [m, c] : u.terms())
    if (!all_factors(m, [&](int i, int j) { return P.in_p(i, j); })) return false;
  return true;
}

inline bool in_Up0(const Pyramid& P, const PbwElt& u) {
  for (const auto& [m, c] : u.terms())
    if (!all_factors(m, [&](int i, int j) { return P.in_p0(i, j); })) return false;
  return true;
}

inline bool in_Ug0(const Pyramid& P, const PbwElt& u) {
  for (const auto& [m, c] : u.terms())
    if (!all_factors(m, [&](int i, int j) { return P.in_g0(i, j); })) return false;
  return true;
}

inline bool is_diagonal(const PbwElt& u) {
  for (const auto& [m, c] : u.terms())
    if (!all_factors(m, [](int i, int j) { return i == j; })) return false;
  return true;
}

// ------------------------------------------------------------ projections

/// Projection U(g) -> U(p) along the left ideal generated by x - chi(x), x in m.
/// In PR order every m factor sits at the right end of a monomial.
inline PbwElt pr(const Pyramid& P, const PbwElt& u) {
  PbwElt s = straighten(u, P.pr_order);
  PbwElt r(P.pr_order);
  for (const auto& [m, c] : s.terms()) {
    std::size_t cut = m.size();
    while (cut > 0) {
      auto f = static_cast<UnitCode>(m[cut - 1]);
      if (!P.in_m(unit_i(f), unit_j(f))) break;
      --cut;
    }
    bool zero = false;
    for (std::size_t k = cut; k < m.size(); ++k) {
      auto f = static_cast<UnitCode>(m[k]);
      if (!P.chi_unit(unit_i(f), unit_j(f))) zero = true;
    }
    // chi is 0 or 1 on units, so the trailing product is 0 or 1.
    if (!zero) r.add_normal(m.substr(0, cut), c);
  }
  return r;
}

/// Splits u by the restricted weight of its monomials.
inline std::map<RestrictedWeight, PbwElt> te_weight_decompose(const Pyramid& P, const PbwElt& u) {
  std::map<RestrictedWeight, PbwElt> out;
  for (const auto& [m, c] : u.terms()) {
    auto w = to_restricted(mono_weight(P, m));
    auto it = out.try_emplace(w, PbwElt(u.order())).first;
    it->second.add_normal(m, c);
  }
  return out;
}

inline bool has_zero_weight(const Pyramid& P, const PbwElt& u) {
  for (const auto& [m, c] : u.terms())
    for (int x : mono_weight(P, m))
      if (x != 0) return false;
  return true;
}

/// Quotient U(p)_0 -> U(p_0) killing the ideal generated by positive
/// restricted root vectors. Output is re-tagged to PR order (PR and PI agree on p_0).
inline PbwElt pi0(const Pyramid& P, const PbwElt& u) {
  require(in_Up(P, u), "pi0: input is not in U(p)");
  require(has_zero_weight(P, u), "pi0: input does not have restricted weight 0");
  PbwElt s = straighten(u, P.pi_order);
  PbwElt r(P.pi_order);
  for (const auto& [m, c] : s.terms())
    if (all_factors(m, [&](int i, int j) { return P.in_p0(i, j); })) r.add_normal(m, c);
  return straighten(r, P.pr_order);
}

/// Projection onto S(t): straighten with lower triangular factors left and
/// upper triangular factors right, keep the diagonal monomials. Defined on
/// all of U(g_0) (it agrees with the projection induced by p_0 -> t on U(p_0)).
inline PbwElt xi(const Pyramid& P, const PbwElt& u) {
  PbwElt s = straighten(u, P.hc_order);
  PbwElt r(P.hc_order);
  for (const auto& [m, c] : s.terms())
    if (all_factors(m, [](int i, int j) { return i == j; })) r.add_normal(m, c);
  return r;
}

/// Units reachable by brackets from the units occurring in u.
inline std::set<Factor> generated_units(const PbwElt& u) {
  std::set<Factor> s;
  for (const auto& [m, c] : u.terms())
    for (auto f : factors_of(m)) s.insert(f);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Factor> add;
    for (auto [a, b] : s)
      for (auto [c, d] : s) {
        if (b == c && !s.count({a, d})) add.emplace_back(a, d);
      }
    for (auto f : add) grew |= s.insert(f).second;
  }
  return s;
}

/// Automorphism x -> x + nu(x) of the subalgebra generated by the units in u.
/// nu must be a character there: nu_a = nu_b whenever e_ab and e_ba both occur.
inline PbwElt shift(const PbwElt& u, const TWeight& nu) {
  auto units = generated_units(u);
  for (auto [a, b] : units) {
    if (a == b) continue;
    if (a > static_cast<int>(nu.size()) || b > static_cast<int>(nu.size())) throw ValidationError("shift: weight too short");
    if (units.count({b, a}) && nu[a - 1] != nu[b - 1])
      throw ValidationError("shift: weight is not a character (coordinates " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ)");
  }
  PbwElt r(u.order());
  std::vector<std::pair<Mono, Rational>> cur, next;
  for (const auto& [m, c] : u.terms()) {
    cur.assign(1, {Mono(), c});
    for (char ch : m) {
      auto f = static_cast<UnitCode>(ch);
      int i = unit_i(f), j = unit_j(f);
      next.clear();
      for (auto& [w, k] : cur) {
        if (i == j && sgn(nu[i - 1]) != 0) next.emplace_back(w, k * nu[i - 1]);
        next.emplace_back(w + ch, k);
      }
      std::swap(cur, next);
    }
    for (auto& [w, k] : cur) r.add_normal(w, k);
  }
  return r;
}

inline TWeight negate(TWeight w) {
  for (auto& x : w) x = -x;
  return w;
}

// ------------------------------------------------------ polynomials in t

/// Value of a diagonal element at a point of t*.
inline Rational evaluate(const PbwElt& u, const TWeight& lambda) {
  ensure(is_diagonal(u), "evaluate: element has off-diagonal factors");
  Rational total = 0;
  for (const auto& [m, c] : u.terms()) {
    Rational v = c;
    for (auto [i, j] : factors_of(m)) v *= lambda[i - 1];
    total += v;
  }
  return total;
}

/// Renames t_j -> t_{perm[j-1]} in a diagonal element.
inline PbwElt permute_diagonal(const PbwElt& u, const std::vector<int>& perm) {
  PbwElt r(u.order());
  for (const auto& [m, c] : u.terms()) {
    std::vector<Factor> f;
    for (auto [i, j] : factors_of(m)) f.emplace_back(perm[i - 1], perm[i - 1]);
    r += PbwElt::word(u.order(), f, c);
  }
  return r;
}

/// True when u is invariant under permuting t_j within each row of P
/// (or within all of 1..N when whole is set).
inline bool is_row_symmetric(const Pyramid& P, const PbwElt& u, bool whole = false) {
  for (int j = 1; j < P.N; ++j) {
    if (!whole && P.row[j] != P.row[j + 1]) continue;
    std::vector<int> perm(P.N);
    for (int k = 0; k < P.N; ++k) perm[k] = k + 1;
    std::swap(perm[j - 1], perm[j]);
    if (!(permute_diagonal(u, perm) == u)) return false;
  }
  return true;
}

/// The polynomial t_j as a diagonal element.
inline PbwElt t_var(const OrderPtr& o, int j) { return PbwElt::unit(o, j, j); }

}  // namespace wgb
