#pragma once

#include <cmath>
#include <utility>

#include "bcv/errors.hpp"
#include "bcv/grid.hpp"

namespace bcv {

inline double pivot_magnitude(double x) { return std::abs(x); }
inline double pivot_magnitude(const Jet& x) { return std::abs(x.value()); }

// Gauss-Jordan inverse over any commutative ring with division by units.
// Instantiated with doubles and with jets; for jets this propagates inverse
// derivatives exactly (the same recursion as ∂g⁻¹ = −g⁻¹ ∂g g⁻¹), with
// pivoting driven by the constant terms.
template <typename T>
Grid<T, 2> invert_matrix(Grid<T, 2> m, const T& one, errc code, const char* what) {
  const int n = m.dim();
  const T zero = one * 0.0;
  Grid<T, 2> inv(n, zero);
  for (int i = 0; i < n; ++i) inv(i, i) = one;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = pivot_magnitude(m(col, col));
    for (int r = col + 1; r < n; ++r) {
      double mag = pivot_magnitude(m(r, col));
      if (mag > best) best = mag, piv = r;
    }
    if (best < 1e-300) throw error(code, what);
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(col, j), m(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    T d = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) = m(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = m(r, col);
      if (pivot_magnitude(f) == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - f * m(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

template <typename T>
T det_matrix(Grid<T, 2> m, const T& one) {
  const int n = m.dim();
  T det = one;
  double sign = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = pivot_magnitude(m(col, col));
    for (int r = col + 1; r < n; ++r) {
      double mag = pivot_magnitude(m(r, col));
      if (mag > best) best = mag, piv = r;
    }
    if (best < 1e-300) return one * 0.0;
    if (piv != col) {
      sign = -sign;
      for (int j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
    }
    det = det * m(col, col);
    for (int r = col + 1; r < n; ++r) {
      T f = m(r, col) / m(col, col);
      if (pivot_magnitude(f) == 0.0) continue;
      for (int j = col; j < n; ++j) m(r, j) = m(r, j) - f * m(col, j);
    }
  }
  return det * sign;
}

}  // namespace bcv
