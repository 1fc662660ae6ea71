#pragma once

#include "wgb/errors.hpp"
#include "wgb/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace wgb {

/// Sparse vector: (column, value) pairs, strictly increasing columns, no zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

/// Incremental row echelon form over Q. Each stored row has leading
/// coefficient 1 at its pivot column. The set of pivot columns depends
/// only on the span of the inserted vectors.
class Echelon {
 public:
  /// Reduces v against the stored rows. Returns the remainder.
  SparseVec reduce(const SparseVec& v) const {
    std::map<int, Rational> w(v.begin(), v.end());
    reduce_in_place(w);
    return SparseVec(w.begin(), w.end());
  }

  /// Inserts v; returns true when it was independent of earlier rows.
  bool insert(const SparseVec& v) {
    std::map<int, Rational> w(v.begin(), v.end());
    reduce_in_place(w);
    if (w.empty()) return false;
    Rational lead = w.begin()->second;
    SparseVec row;
    row.reserve(w.size());
    for (auto& [c, x] : w) row.emplace_back(c, x / lead);
    int pc = row.front().first;
    rows_.emplace(pc, std::move(row));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  void reduce_in_place(std::map<int, Rational>& w) const {
    auto it = w.begin();
    while (it != w.end()) {
      auto p = rows_.find(it->first);
      if (p == rows_.end()) {
        ++it;
        continue;
      }
      Rational c = it->second;
      int col = it->first;
      for (const auto& [pc, px] : p->second) {
        auto [jt, fresh] = w.try_emplace(pc, 0);
        jt->second -= c * px;
        if (sgn(jt->second) == 0 && pc != col) w.erase(jt);
      }
      it = w.erase(w.find(col));
    }
  }

  std::map<int, SparseVec> rows_;
};

/// Solves sum_k x_k * a_k = b where equations are given as rows over
/// unknown columns 0..nunknowns-1. Each equation is (coefficients, rhs).
/// Free unknowns are set to 0; the result is the canonical reduced-echelon
/// solution for the column order. Returns nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve_canonical(
    const std::vector<std::pair<SparseVec, Rational>>& equations, int nunknowns) {
  Echelon ech;
  const int rhs_col = nunknowns;
  for (const auto& [coeffs, rhs] : equations) {
    SparseVec row = coeffs;
    if (sgn(rhs) != 0) row.emplace_back(rhs_col, rhs);
    ech.insert(row);
  }
  if (ech.rows().count(rhs_col)) return std::nullopt;
  std::vector<Rational> x(nunknowns, Rational(0));
  // Back substitution from the last pivot; free unknowns stay 0.
  for (auto it = ech.rows().rbegin(); it != ech.rows().rend(); ++it) {
    const auto& row = it->second;
    Rational val = 0;
    for (std::size_t k = 1; k < row.size(); ++k) {
      int c = row[k].first;
      if (c == rhs_col)
        val += row[k].second;
      else
        val -= row[k].second * x[c];
    }
    x[it->first] = val;
  }
  return x;
}

using DenseMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(DenseMatrix& a, int ncols) {
  std::vector<int> piv;
  int r = 0;
  const int nrows = static_cast<int>(a.size());
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int sel = -1;
    for (int i = r; i < nrows; ++i)
      if (sgn(a[i][c]) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[r], a[sel]);
    Rational inv = 1 / a[r][c];
    for (int k = 0; k < ncols; ++k) a[r][k] *= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (int k = 0; k < ncols; ++k) a[i][k] -= f * a[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline int rank_dense(DenseMatrix a, int ncols) {
  return static_cast<int>(rref(a, ncols).size());
}

/// Null space basis of a (rows x ncols). Vector k has a 1 at its free
/// column and 0 at every other free column.
inline std::vector<std::vector<Rational>> nullspace(DenseMatrix a, int ncols,
                                                    std::vector<int>* free_cols = nullptr) {
  auto piv = rref(a, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    if (free_cols) free_cols->push_back(f);
    std::vector<Rational> v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace wgb
