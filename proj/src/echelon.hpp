#pragma once

// Row reduction shared by the exact (rational) and floating-point paths.

#include <algorithm>
#include <cmath>
#include <vector>

#include "nilherm/exterior.hpp"

namespace nilherm::detail {

template <class T>
using DenseMatrix = std::vector<std::vector<T>>;

template <class T>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static double magnitude(const Rational& r) { return std::abs(boost::rational_cast<double>(r)); }
  static bool is_zero(const Rational& r, double /*scale*/) { return r.numerator() == 0; }
};

template <>
struct FieldOps<double> {
  static double magnitude(double x) { return std::abs(x); }
  // Threshold relative to the largest entry of the input.
  static bool is_zero(double x, double scale) { return std::abs(x) <= 1e-10 * scale; }
};

template <class T>
struct Echelon {
  DenseMatrix<T> rows;        // reduced row echelon form
  std::vector<int> pivots;    // pivot column of each non-zero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Reduced row echelon form with column pivoting on the largest magnitude.
template <class T>
Echelon<T> rref(DenseMatrix<T> m) {
  Echelon<T> out;
  if (m.empty()) return out;
  const std::size_t nrows = m.size();
  const std::size_t ncols = m.front().size();
  double scale = 0.0;
  for (const auto& row : m)
    for (const auto& x : row) scale = std::max(scale, FieldOps<T>::magnitude(x));
  if (scale == 0.0) scale = 1.0;

  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t best = r;
    for (std::size_t i = r + 1; i < nrows; ++i)
      if (FieldOps<T>::magnitude(m[i][c]) > FieldOps<T>::magnitude(m[best][c])) best = i;
    if (FieldOps<T>::is_zero(m[best][c], scale)) {
      for (std::size_t i = r; i < nrows; ++i) m[i][c] = T(0);
      continue;
    }
    std::swap(m[r], m[best]);
    const T pivot = m[r][c];
    for (auto& x : m[r]) x /= pivot;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      const T f = m[i][c];
      if (f == T(0)) continue;
      for (std::size_t k = 0; k < ncols; ++k) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

/// Basis of {x : m x = 0}, one vector per free column.
template <class T>
DenseMatrix<T> nullspace(const DenseMatrix<T>& m, std::size_t ncols) {
  DenseMatrix<T> basis;
  const Echelon<T> e = rref(m);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(ncols, T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      v[static_cast<std::size_t>(e.pivots[r])] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
int rank(const DenseMatrix<T>& m) {
  return rref(m).rank();
}

}  // namespace nilherm::detail
