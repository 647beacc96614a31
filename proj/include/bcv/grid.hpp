#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bcv/jet.hpp"

namespace bcv {

// Dense rank-R array with every axis of length n (the manifold dimension is
// small, so symmetry is stored redundantly for simple indexing).
template <typename T, int R>
class Grid {
 public:
  Grid() = default;
  explicit Grid(int n, const T& init = T{}) : n_(n), v_(total(n), init) {}

  int dim() const { return n_; }

  template <typename... I>
  T& operator()(I... is) {
    static_assert(sizeof...(I) == R, "index count must match grid rank");
    return v_[flat(is...)];
  }
  template <typename... I>
  const T& operator()(I... is) const {
    static_assert(sizeof...(I) == R, "index count must match grid rank");
    return v_[flat(is...)];
  }

  std::vector<T>& raw() { return v_; }
  const std::vector<T>& raw() const { return v_; }

 private:
  static std::size_t total(int n) {
    std::size_t s = 1;
    for (int i = 0; i < R; ++i) s *= static_cast<std::size_t>(n);
    return s;
  }
  template <typename... I>
  std::size_t flat(I... is) const {
    std::size_t idx = 0;
    ((idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(is)), ...);
    return idx;
  }

  int n_ = 0;
  std::vector<T> v_;
};

using D1 = Grid<double, 1>;
using D2 = Grid<double, 2>;
using D3 = Grid<double, 3>;
using D4 = Grid<double, 4>;
using D5 = Grid<double, 5>;
using J1 = Grid<Jet, 1>;
using J2 = Grid<Jet, 2>;
using J3 = Grid<Jet, 3>;
using J4 = Grid<Jet, 4>;

template <int R>
double max_abs(const Grid<double, R>& g) {
  double m = 0.0;
  for (double x : g.raw()) m = std::max(m, std::abs(x));
  return m;
}

template <int R>
double max_abs_diff(const Grid<double, R>& a, const Grid<double, R>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
  return m;
}

template <int R>
Grid<double, R> values(const Grid<Jet, R>& g) {
  Grid<double, R> out(g.dim());
  for (std::size_t i = 0; i < g.raw().size(); ++i) out.raw()[i] = g.raw()[i].value();
  return out;
}

// First partials of every entry; the derivative axis is appended last,
// matching the storage convention used throughout (value indexes first,
// derivative indexes after them).
template <int R>
Grid<double, R + 1> jet_d1(const Grid<Jet, R>& g) {
  const int n = g.dim();
  Grid<double, R + 1> out(n);
  const std::size_t m = g.raw().size();
  for (std::size_t i = 0; i < m; ++i)
    for (int v = 0; v < n; ++v) out.raw()[i * n + v] = g.raw()[i].coeff(1 + v);
  return out;
}

template <int R>
Grid<double, R + 2> jet_d2(const Grid<Jet, R>& g) {
  const int n = g.dim();
  const JetTable& t = jet_table(n);
  Grid<double, R + 2> out(n);
  std::vector<uint8_t> alpha(n);
  Grid<int, 2> pos(n);
  Grid<double, 2> mult(n);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w) {
      std::fill(alpha.begin(), alpha.end(), 0);
      ++alpha[v], ++alpha[w];
      int p = t.position(alpha);
      pos(v, w) = p;
      mult(v, w) = t.fact[p];
    }
  const std::size_t m = g.raw().size();
  for (std::size_t i = 0; i < m; ++i)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        out.raw()[(i * n + v) * n + w] = g.raw()[i].coeff(pos(v, w)) * mult(v, w);
  return out;
}

template <int R>
Grid<double, R + 3> jet_d3(const Grid<Jet, R>& g) {
  const int n = g.dim();
  const JetTable& t = jet_table(n);
  Grid<double, R + 3> out(n);
  std::vector<uint8_t> alpha(n);
  const std::size_t m = g.raw().size();
  for (std::size_t i = 0; i < m; ++i)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        for (int u = 0; u < n; ++u) {
          std::fill(alpha.begin(), alpha.end(), 0);
          ++alpha[v], ++alpha[w], ++alpha[u];
          int p = t.position(alpha);
          out.raw()[((i * n + v) * n + w) * n + u] = g.raw()[i].coeff(p) * t.fact[p];
        }
  return out;
}

}  // namespace bcv
