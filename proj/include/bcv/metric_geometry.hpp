#pragma once

#include "bcv/grid.hpp"
#include "bcv/linalg.hpp"
#include "bcv/source.hpp"

namespace bcv {

// ---- jet-level building blocks (shared by the adapted-connection pipeline) ----

inline Grid<Jet, 2> inverse_metric_jets(const Grid<Jet, 2>& g) {
  return invert_matrix(g, Jet::constant(g.dim(), 1.0), errc::singular_metric,
                       "metric at sample point");
}

// Γ^a_bc = ½ g^{ar}(∂_b g_rc + ∂_c g_rb − ∂_r g_bc); one order below the metric.
inline Grid<Jet, 3> christoffel_jets(const Grid<Jet, 2>& g, const Grid<Jet, 2>& ginv) {
  const int n = g.dim();
  Grid<Jet, 3> dg(n);  // [a][b][c] = ∂_c g_ab
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) dg(a, b, c) = g(a, b).partial(c);
  Grid<Jet, 3> gamma(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        Jet s = Jet::constant(n, 0.0);
        for (int r = 0; r < n; ++r)
          s = s + ginv(a, r) * (dg(r, c, b) + dg(r, b, c) - dg(b, c, r));
        gamma(a, b, c) = 0.5 * s;
        gamma(a, c, b) = gamma(a, b, c);
      }
  return gamma;
}

// Curvature of any symmetric connection: R^a_bcd = ∂_c Γ^a_db − ∂_d Γ^a_cb
// + Γ^a_rc Γ^r_db − Γ^a_rd Γ^r_cb.  Result is one order below the connection;
// the quadratic terms are pre-truncated to that order to keep products cheap.
inline Grid<Jet, 4> connection_curvature_jets(const Grid<Jet, 3>& conn) {
  const int n = conn.dim();
  int ord = kJetOrder;
  for (const Jet& j : conn.raw()) ord = std::min(ord, j.order());
  Grid<Jet, 3> cl(n);
  for (std::size_t i = 0; i < cl.raw().size(); ++i) cl.raw()[i] = conn.raw()[i].truncated(ord - 1);
  Grid<Jet, 4> riem(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < c; ++d) {
          Jet s = conn(a, d, b).partial(c) - conn(a, c, b).partial(d);
          for (int r = 0; r < n; ++r)
            s = s + cl(a, r, c) * cl(r, d, b) - cl(a, r, d) * cl(r, c, b);
          riem(a, b, c, d) = s;
          riem(a, b, d, c) = -s;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) riem(a, b, c, c) = Jet::constant(n, 0.0);
  return riem;
}

// ---- value-level results for callers that want plain arrays ----

struct MetricEval {
  D2 g, ginv;
  D3 dg;    // [a][b][c]   = ∂_c g_ab
  D4 d2g;   // [a][b][c][d] = ∂_c ∂_d g_ab
  D5 d3g;
  double det = 0.0;
};

struct ConnectionEval {
  D3 gamma;    // Γ^a_bc
  D4 dgamma;   // [a][b][c][d] = ∂_d Γ^a_bc
  D5 d2gamma;
};

struct CurvatureEval {
  D4 riemann;      // R^a_bcd
  D4 riemann_low;  // R_abcd
  D2 ricci;        // R_ab = R^r_arb
  double scalar = 0.0;
  D4 weyl;         // C_abcd, all indexes down; empty when dim < 3
};

inline MetricEval metric_eval(const Grid<Jet, 2>& gj) {
  MetricEval m;
  m.g = values(gj);
  Grid<Jet, 2> ginv = inverse_metric_jets(gj);
  m.ginv = values(ginv);
  m.dg = jet_d1(gj);
  m.d2g = jet_d2(gj);
  m.d3g = jet_d3(gj);
  m.det = det_matrix(m.g, 1.0);
  return m;
}

inline ConnectionEval connection_eval(const Grid<Jet, 2>& gj) {
  Grid<Jet, 3> gamma = christoffel_jets(gj, inverse_metric_jets(gj));
  ConnectionEval c;
  c.gamma = values(gamma);
  c.dgamma = jet_d1(gamma);
  c.d2gamma = jet_d2(gamma);
  return c;
}

inline CurvatureEval curvature_eval(const Grid<Jet, 2>& gj) {
  const int n = gj.dim();
  Grid<Jet, 2> ginv = inverse_metric_jets(gj);
  Grid<Jet, 4> riem = connection_curvature_jets(christoffel_jets(gj, ginv));
  CurvatureEval cv;
  cv.riemann = values(riem);
  D2 g = values(gj), gi = values(ginv);
  cv.riemann_low = D4(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int r = 0; r < n; ++r) s += g(a, r) * cv.riemann(r, b, c, d);
          cv.riemann_low(a, b, c, d) = s;
        }
  cv.ricci = D2(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int r = 0; r < n; ++r) s += cv.riemann(r, a, r, b);
      cv.ricci(a, b) = s;
    }
  cv.scalar = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cv.scalar += gi(a, b) * cv.ricci(a, b);
  if (n >= 3) {
    cv.weyl = D4(n);
    const double k1 = 2.0 / (n - 2);
    const double k2 = 2.0 / ((n - 1.0) * (n - 2.0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double gR1 = 0.5 * (g(a, c) * cv.ricci(d, b) - g(a, d) * cv.ricci(c, b));
            double gR2 = 0.5 * (g(b, c) * cv.ricci(d, a) - g(b, d) * cv.ricci(c, a));
            double gg = 0.5 * (g(a, c) * g(d, b) - g(a, d) * g(c, b));
            cv.weyl(a, b, c, d) =
                cv.riemann_low(a, b, c, d) - k1 * (gR1 - gR2) + k2 * cv.scalar * gg;
          }
  }
  return cv;
}

struct ProjectorEval {
  D2 P, Pi, Pud, Piud, Puu, Piuu;
  int rank = 0;
  double trace_defect = 0.0;   // distance of tr P^a_b from the nearest integer
  double idem_defect = 0.0;    // max |P^a_r P^r_b − P^a_b|
  double sym_defect = 0.0;     // max |P_ab − P_ba|
  double compat_defect = 0.0;  // max |P_ar g^{rs} P_sb − P_ab|
};

inline ProjectorEval projector_eval(const Grid<Jet, 2>& gj, const Grid<Jet, 2>& Pj) {
  const int n = gj.dim();
  ProjectorEval pe;
  pe.P = values(Pj);
  D2 g = values(gj), gi = values(inverse_metric_jets(gj));
  pe.Pi = D2(n);
  pe.Pud = D2(n);
  pe.Puu = D2(n);
  pe.Piud = D2(n);
  pe.Piuu = D2(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      pe.Pi(a, b) = g(a, b) - pe.P(a, b);
      double s = 0.0;
      for (int c = 0; c < n; ++c) s += gi(a, c) * pe.P(c, b);
      pe.Pud(a, b) = s;
      pe.Piud(a, b) = (a == b ? 1.0 : 0.0) - s;
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int c = 0; c < n; ++c) s += pe.Pud(a, c) * gi(c, b);
      pe.Puu(a, b) = s;
      pe.Piuu(a, b) = gi(a, b) - s;
    }
  double tr = 0.0;
  for (int a = 0; a < n; ++a) tr += pe.Pud(a, a);
  pe.rank = static_cast<int>(std::lround(tr));
  pe.trace_defect = std::abs(tr - pe.rank);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double idem = -pe.Pud(a, b), compat = -pe.P(a, b);
      for (int r = 0; r < n; ++r) {
        idem += pe.Pud(a, r) * pe.Pud(r, b);
        for (int s = 0; s < n; ++s) compat += pe.P(a, r) * gi(r, s) * pe.P(s, b);
      }
      pe.idem_defect = std::max(pe.idem_defect, std::abs(idem));
      pe.compat_defect = std::max(pe.compat_defect, std::abs(compat));
      pe.sym_defect = std::max(pe.sym_defect, std::abs(pe.P(a, b) - pe.P(b, a)));
    }
  return pe;
}

}  // namespace bcv
