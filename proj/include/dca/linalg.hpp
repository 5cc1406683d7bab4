#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "dca/rational.hpp"

namespace dca {

using Mat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

// Reduced row echelon form.  Pivot = leftmost nonzero entry in the first
// unfinished row scanning columns left to right, so results are canonical
// for a fixed column order.  Returns the rank, pivot columns in *pivots.
inline Eigen::Index rref_in_place(Mat& m, std::vector<Eigen::Index>* pivots = nullptr) {
  Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  if (pivots) pivots->clear();
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (m(i, c) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    m.row(r) /= m(r, c);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r && m(i, c) != 0) m.row(i) -= m(i, c) * m.row(r);
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

inline Eigen::Index rank_of(Mat m) { return rref_in_place(m); }

// Columns spanning ker(m), one per free column, in free-column order.
inline Mat kernel_basis(Mat m) {
  Eigen::Index cols = m.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = rref_in_place(m, &pivots);
  std::vector<char> is_pivot(cols, 0);
  for (Eigen::Index c : pivots) is_pivot[c] = 1;
  Mat k(cols, cols - r);
  k.setZero();
  Eigen::Index out = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    k(c, out) = 1;
    for (Eigen::Index i = 0; i < r; ++i) k(pivots[i], out) = -m(i, c);
    ++out;
  }
  return k;
}

// Indices of a maximal independent subset of columns, greedy left to right.
inline std::vector<Eigen::Index> independent_columns(Mat m) {
  std::vector<Eigen::Index> pivots;
  rref_in_place(m, &pivots);
  return pivots;
}

// One solution of A x = b, or nullopt if inconsistent.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  Mat aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = rref_in_place(aug, &pivots);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  x.setZero();
  for (Eigen::Index i = 0; i < r; ++i) x(pivots[i]) = aug(i, a.cols());
  return x;
}

inline bool in_span(const Mat& basis, const Vec& v) {
  if (v.isZero()) return true;
  if (basis.cols() == 0) return false;
  return solve(basis, v).has_value();
}

}  // namespace dca
