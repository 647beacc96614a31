#pragma once

#include "bcv/grid.hpp"

namespace bcv {

// Lie derivatives along a vector field ξ, everything as jets.  Each result is
// one order below the lower-order operand because a coordinate derivative is
// taken.  Index convention: the derivative slot of stored covariant
// derivatives is always last; here tensors carry their natural slots.

inline Jet lie_scalar(const Grid<Jet, 1>& xi, const Jet& f) {
  const int n = xi.dim();
  Jet s = Jet::constant(n, 0.0);
  for (int c = 0; c < n; ++c) s = s + xi(c) * f.partial(c);
  return s;
}

inline Grid<Jet, 1> lie_vector(const Grid<Jet, 1>& xi, const Grid<Jet, 1>& eta) {
  const int n = xi.dim();
  Grid<Jet, 1> r(n);
  for (int a = 0; a < n; ++a) {
    Jet s = Jet::constant(n, 0.0);
    for (int c = 0; c < n; ++c) s = s + xi(c) * eta(a).partial(c) - eta(c) * xi(a).partial(c);
    r(a) = s;
  }
  return r;
}

inline Grid<Jet, 1> lie_covector(const Grid<Jet, 1>& xi, const Grid<Jet, 1>& w) {
  const int n = xi.dim();
  Grid<Jet, 1> r(n);
  for (int a = 0; a < n; ++a) {
    Jet s = Jet::constant(n, 0.0);
    for (int c = 0; c < n; ++c) s = s + xi(c) * w(a).partial(c) + w(c) * xi(c).partial(a);
    r(a) = s;
  }
  return r;
}

// T_ab, both indexes down
inline Grid<Jet, 2> lie_tensor02(const Grid<Jet, 1>& xi, const Grid<Jet, 2>& T) {
  const int n = xi.dim();
  Grid<Jet, 2> r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet s = Jet::constant(n, 0.0);
      for (int c = 0; c < n; ++c)
        s = s + xi(c) * T(a, b).partial(c) + T(c, b) * xi(c).partial(a) +
            T(a, c) * xi(c).partial(b);
      r(a, b) = s;
    }
  return r;
}

// T^a_b
inline Grid<Jet, 2> lie_tensor11(const Grid<Jet, 1>& xi, const Grid<Jet, 2>& T) {
  const int n = xi.dim();
  Grid<Jet, 2> r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet s = Jet::constant(n, 0.0);
      for (int c = 0; c < n; ++c)
        s = s + xi(c) * T(a, b).partial(c) - T(c, b) * xi(a).partial(c) +
            T(a, c) * xi(c).partial(b);
      r(a, b) = s;
    }
  return r;
}

// T_abc, all down
inline Grid<Jet, 3> lie_tensor03(const Grid<Jet, 1>& xi, const Grid<Jet, 3>& T) {
  const int n = xi.dim();
  Grid<Jet, 3> r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Jet s = Jet::constant(n, 0.0);
        for (int d = 0; d < n; ++d)
          s = s + xi(d) * T(a, b, c).partial(d) + T(d, b, c) * xi(d).partial(a) +
              T(a, d, c) * xi(d).partial(b) + T(a, b, d) * xi(d).partial(c);
        r(a, b, c) = s;
      }
  return r;
}

// T^a_bc (a genuine tensor, unlike a connection)
inline Grid<Jet, 3> lie_tensor12(const Grid<Jet, 1>& xi, const Grid<Jet, 3>& T) {
  const int n = xi.dim();
  Grid<Jet, 3> r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Jet s = Jet::constant(n, 0.0);
        for (int d = 0; d < n; ++d)
          s = s + xi(d) * T(a, b, c).partial(d) - T(d, b, c) * xi(a).partial(d) +
              T(a, d, c) * xi(d).partial(b) + T(a, b, d) * xi(d).partial(c);
        r(a, b, c) = s;
      }
  return r;
}

// R^a_bcd
inline Grid<Jet, 4> lie_tensor13(const Grid<Jet, 1>& xi, const Grid<Jet, 4>& T) {
  const int n = xi.dim();
  Grid<Jet, 4> r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Jet s = Jet::constant(n, 0.0);
          for (int e = 0; e < n; ++e)
            s = s + xi(e) * T(a, b, c, d).partial(e) - T(e, b, c, d) * xi(a).partial(e) +
                T(a, e, c, d) * xi(e).partial(b) + T(a, b, e, d) * xi(e).partial(c) +
                T(a, b, c, e) * xi(e).partial(d);
          r(a, b, c, d) = s;
        }
  return r;
}

// Symmetric connection coefficients transform with an extra second-derivative
// term: (L_ξ Γ)^a_bc = ξ^d ∂_d Γ^a_bc − Γ^d_bc ∂_d ξ^a + Γ^a_dc ∂_b ξ^d
// + Γ^a_bd ∂_c ξ^d + ∂_b ∂_c ξ^a.
inline Grid<Jet, 3> lie_connection(const Grid<Jet, 1>& xi, const Grid<Jet, 3>& conn) {
  const int n = xi.dim();
  Grid<Jet, 3> r(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Jet s = xi(a).partial(b).partial(c);
        for (int d = 0; d < n; ++d)
          s = s + xi(d) * conn(a, b, c).partial(d) - conn(d, b, c) * xi(a).partial(d) +
              conn(a, d, c) * xi(d).partial(b) + conn(a, b, d) * xi(d).partial(c);
        r(a, b, c) = s;
      }
  return r;
}

}  // namespace bcv
