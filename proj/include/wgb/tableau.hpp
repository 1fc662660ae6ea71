#pragma once

#include "wgb/errors.hpp"
#include "wgb/pyramid.hpp"
#include "wgb/rational.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace wgb {

/// Filling of the boxes of a pyramid by rationals, entries in box order.
struct Tableau {
  Pyramid shape;
  std::vector<Rational> entries;  ///< entries[i-1] sits in box i

  const Rational& at(int r, int c) const { return entries[shape.box_at(r, c) - 1]; }
  std::vector<Rational> row_entries(int r) const {
    std::vector<Rational> v;
    for (int c = 1; c <= shape.parts[r - 1]; ++c) v.push_back(at(r, c));
    return v;
  }
};

/// a <= b in the integer-shift order: b - a is a nonnegative integer.
inline bool shift_le(const Rational& a, const Rational& b) {
  Rational d = b - a;
  return is_integer(d) && sgn(d) >= 0;
}

inline bool shift_lt(const Rational& a, const Rational& b) {
  Rational d = b - a;
  return is_integer(d) && sgn(d) > 0;
}

/// Rows top to bottom separated by ';', entries by ','.
inline Tableau parse_tableau(const Pyramid& P, const std::string& text) {
  Tableau A{P, {}};
  std::vector<std::string> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(row);
  if (!text.empty() && text.back() == ';') rows.emplace_back();
  if (static_cast<int>(rows.size()) != P.n)
    throw ValidationError("tableau has " + std::to_string(rows.size()) + " rows, partition has " +
                          std::to_string(P.n));
  for (int r = 1; r <= P.n; ++r) {
    std::stringstream rs(rows[r - 1]);
    std::string tok;
    int count = 0;
    while (std::getline(rs, tok, ',')) {
      try {
        A.entries.push_back(parse_rational(tok));
      } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("tableau row ") + std::to_string(r) + ": " + e.what());
      }
      ++count;
    }
    if (count != P.parts[r - 1])
      throw ValidationError("tableau row " + std::to_string(r) + " has " + std::to_string(count) +
                            " entries, expected " + std::to_string(P.parts[r - 1]));
  }
  return A;
}

inline std::string format_tableau(const Tableau& A) {
  std::ostringstream os;
  for (int r = 1; r <= A.shape.n; ++r) {
    if (r > 1) os << ';';
    for (int c = 1; c <= A.shape.parts[r - 1]; ++c) os << (c > 1 ? "," : "") << to_string(A.at(r, c));
  }
  return os.str();
}

inline Tableau tableau_from_weight(const Pyramid& P, const TWeight& lambda) {
  require(static_cast<int>(lambda.size()) == P.N, "weight length does not match the partition");
  return Tableau{P, lambda};
}

inline TWeight weight_from_tableau(const Tableau& A) { return A.entries; }

inline bool is_column_strict(const Tableau& A) {
  const Pyramid& P = A.shape;
  for (int r = 1; r < P.n; ++r)
    for (int c = 1; c <= P.parts[r - 1]; ++c)
      if (!shift_lt(A.at(r + 1, c), A.at(r, c))) return false;
  return true;
}

struct ColumnStrictResult {
  bool found = false;
  Tableau witness;
};

/// Searches row rearrangements for a column-strict filling. Columns are
/// filled left to right, each from the bottom up, so every choice is
/// checked against the entry directly below it.
inline ColumnStrictResult has_column_strict_rep(const Tableau& A) {
  const Pyramid& P = A.shape;
  std::vector<std::vector<Rational>> pool(P.n + 1);
  for (int r = 1; r <= P.n; ++r) {
    pool[r] = A.row_entries(r);
    std::sort(pool[r].begin(), pool[r].end());
  }
  std::vector<std::vector<bool>> used(P.n + 1);
  for (int r = 1; r <= P.n; ++r) used[r].assign(pool[r].size(), false);
  Tableau W = A;
  std::function<bool(int, int)> fill = [&](int c, int r) -> bool {
    if (c > P.ell) return true;
    if (r < 1 || P.parts[r - 1] < c) return fill(c + 1, P.n);
    const int below = (r < P.n) ? P.box_at(r + 1, c) : 0;
    for (std::size_t k = 0; k < pool[r].size(); ++k) {
      if (used[r][k]) continue;
      if (k > 0 && !used[r][k - 1] && pool[r][k] == pool[r][k - 1]) continue;  // equal values are interchangeable
      if (below && !shift_lt(W.entries[below - 1], pool[r][k])) continue;
      used[r][k] = true;
      W.entries[P.box_at(r, c) - 1] = pool[r][k];
      if (fill(c, r - 1)) return true;
      used[r][k] = false;
    }
    return false;
  };
  ColumnStrictResult res;
  res.found = fill(1, P.n);
  if (res.found) res.witness = W;
  return res;
}

/// Exhaustive version: tries every combination of row permutations.
inline bool has_column_strict_rep_exhaustive(const Tableau& A) {
  const Pyramid& P = A.shape;
  std::vector<std::vector<Rational>> rows(P.n);
  for (int r = 1; r <= P.n; ++r) {
    rows[r - 1] = A.row_entries(r);
    std::sort(rows[r - 1].begin(), rows[r - 1].end());
  }
  std::function<bool(int)> rec = [&](int r) -> bool {
    if (r == P.n) {
      Tableau T{P, {}};
      for (const auto& row : rows)
        for (const auto& x : row) T.entries.push_back(x);
      return is_column_strict(T);
    }
    std::vector<Rational> saved = rows[r];
    do {
      if (rec(r + 1)) {
        rows[r] = saved;
        return true;
      }
    } while (std::next_permutation(rows[r].begin(), rows[r].end()));
    rows[r] = saved;
    return false;
  };
  return rec(0);
}

/// Row insertion; rows[0] is the bottom row. An entry bumps the smallest
/// comparable entry strictly greater than it, else it is appended.
inline std::vector<std::vector<Rational>> rs_insert(const std::vector<Rational>& seq) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& x : seq) {
    Rational cur = x;
    for (std::size_t r = 0;; ++r) {
      if (r == rows.size()) {
        rows.push_back({cur});
        break;
      }
      int best = -1;
      for (std::size_t k = 0; k < rows[r].size(); ++k)
        if (shift_lt(cur, rows[r][k]) && (best < 0 || rows[r][k] < rows[r][best])) best = static_cast<int>(k);
      if (best < 0) {
        rows[r].push_back(cur);
        break;
      }
      std::swap(cur, rows[r][best]);
    }
  }
  return rows;
}

/// Row lengths listed top to bottom, comparable with Pyramid::parts.
inline std::vector<int> rs_shape(const std::vector<Rational>& seq) {
  auto rows = rs_insert(seq);
  std::vector<int> shape;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) shape.push_back(static_cast<int>(it->size()));
  return shape;
}

enum class Verdict { finite, infinite };

inline const char* to_string(Verdict v) { return v == Verdict::finite ? "finite" : "infinite"; }

inline Verdict classify(const Tableau& A) {
  return has_column_strict_rep(A).found ? Verdict::finite : Verdict::infinite;
}

struct ClsReport {
  Tableau representative;  ///< rows sorted increasingly
  std::vector<int> shape;  ///< RS shape, top to bottom
  bool rs_finite = false;
  Verdict verdict = Verdict::infinite;
  bool agree() const { return rs_finite == (verdict == Verdict::finite); }
};

/// Compares the column-strict classifier with the RS shape criterion on the
/// representative whose rows increase left to right.
inline ClsReport cls_crosscheck(const Tableau& A) {
  ClsReport rep;
  rep.representative = A;
  const Pyramid& P = A.shape;
  rep.representative.entries.clear();
  for (int r = 1; r <= P.n; ++r) {
    auto row = A.row_entries(r);
    std::sort(row.begin(), row.end());
    for (auto& x : row) rep.representative.entries.push_back(x);
  }
  rep.shape = rs_shape(rep.representative.entries);
  rep.rs_finite = rep.shape == P.parts;
  rep.verdict = classify(A);
  return rep;
}

}  // namespace wgb
