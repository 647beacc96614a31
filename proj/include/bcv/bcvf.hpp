#pragma once

// Candidate-field verification: a field qualifies when it Lie-drags each
// projector block onto a multiple of itself (L_ξP = φP, L_ξΠ = χΠ). The
// witness extracts the gauges by trace, reports the scaled defects, and
// decomposes the gauge gradients into leaf/transverse parts. The identity
// suite then evaluates, on independent code paths, the transport laws such a
// field must satisfy for every derived tensor of the adapted frame.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcv/compile.hpp"
#include "bcv/errors.hpp"
#include "bcv/frame.hpp"
#include "bcv/grid.hpp"
#include "bcv/lie.hpp"
#include "bcv/manifold.hpp"
#include "bcv/source.hpp"
#include "bcv/validate.hpp"

namespace bcv {

struct BCVFWitness {
  std::string vector_name;
  double phi = 0.0, chi = 0.0;  // extracted gauges at the point
  double residual_p = 0.0;      // scaled max |L_ξP − φP|
  double residual_pi = 0.0;     // scaled max |L_ξΠ − χΠ|
  double scale = 1.0;
  // deviation from gauge expressions declared in the DSL, when present
  std::optional<double> phi_declared_delta, chi_declared_delta;
  // gauge gradients split by the projectors; "bar" is the projection onto
  // the block the gauge rescales (P for φ, Π for χ), "star" the complement
  Grid<double, 1> phi_bar, phi_star, chi_bar, chi_star;

  double max_residual() const { return std::max(residual_p, residual_pi); }
};

struct IdentityResidual {
  std::string id;
  double residual = 0.0;
};

namespace detail {

inline const VectorSpec& find_vector(const ManifoldSpec& spec, const std::string& name) {
  for (const auto& v : spec.vectors)
    if (v.name == name) return v;
  throw error(errc::unknown_vector, "no vector field named '" + name + "' in manifold '" + spec.name + "'");
}

inline Grid<Jet, 1> vector_jets(const ManifoldSpec& spec, const VectorSpec& v, const Point& x) {
  EvalContext ctx(spec, x);
  const int n = spec.dim;
  Grid<Jet, 1> xi(n);
  for (int a = 0; a < n; ++a) xi(a) = ctx.eval(v.xi[static_cast<std::size_t>(a)]);
  return xi;
}

// the projector-level slice of the frame; enough for the witness and far
// cheaper than a full curvature frame
struct ProjectorJets {
  Grid<Jet, 2> g, ginv, P, Pi, Pud, Piud, Puu, Piuu;
  int n = 0, p = 0;
};

inline ProjectorJets projector_jets(const GeometryData& d, int n) {
  ProjectorJets pj;
  pj.n = n;
  pj.g = d.g;
  pj.P = d.P;
  pj.ginv = inverse_metric_jets(d.g);
  pj.Pi = Grid<Jet, 2>(n);
  pj.Pud = Grid<Jet, 2>(n);
  pj.Puu = Grid<Jet, 2>(n);
  pj.Piud = Grid<Jet, 2>(n);
  pj.Piuu = Grid<Jet, 2>(n);
  const Jet one = Jet::constant(n, 1.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) pj.Pi(a, b) = pj.g(a, b) - pj.P(a, b);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet s = pj.ginv(a, 0) * pj.P(0, b);
      for (int r = 1; r < n; ++r) s = s + pj.ginv(a, r) * pj.P(r, b);
      pj.Pud(a, b) = s;
      pj.Piud(a, b) = (a == b ? one - s : -s);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet s = pj.Pud(a, 0) * pj.ginv(0, b);
      for (int r = 1; r < n; ++r) s = s + pj.Pud(a, r) * pj.ginv(r, b);
      pj.Puu(a, b) = s;
      pj.Piuu(a, b) = pj.ginv(a, b) - s;
    }
  double tr = 0;
  for (int a = 0; a < n; ++a) tr += pj.Pud(a, a).value();
  pj.p = static_cast<int>(std::lround(tr));
  return pj;
}

// φ = (1/p)·P^{ab}(L_ξP)_ab carried through jets so its gradient is available
inline Jet gauge_jet(const Grid<Jet, 2>& projUU, const Grid<Jet, 2>& lieProj, int rank, int n) {
  Jet s = Jet::constant(n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s = s + projUU(a, b) * lieProj(a, b);
  return 1.0 / rank * s;
}

}  // namespace detail

inline BCVFWitness bcvf_check(const GeometrySource& src, const std::string& name, const Point& x) {
  const ManifoldSpec& spec = src.spec();
  const VectorSpec& v = detail::find_vector(spec, name);
  const int n = src.dim();
  const Grid<Jet, 1> xi = detail::vector_jets(spec, v, x);
  const detail::ProjectorJets pj = detail::projector_jets(src.at(x), n);
  const int p = pj.p, q = n - pj.p;
  if (p < 1 || q < 1) throw error(errc::not_a_projector, "projector rank must be between 1 and n−1");

  const Grid<Jet, 2> lieP = lie_tensor02(xi, pj.P);
  const Grid<Jet, 2> liePi = lie_tensor02(xi, pj.Pi);
  const Jet phi = detail::gauge_jet(pj.Puu, lieP, p, n);
  const Jet chi = detail::gauge_jet(pj.Piuu, liePi, q, n);

  BCVFWitness w;
  w.vector_name = name;
  w.phi = phi.value();
  w.chi = chi.value();
  w.scale = 1.0 + max_abs(values(pj.g)) + max_abs(values(xi));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      w.residual_p = std::max(w.residual_p, std::abs(lieP(a, b).value() - w.phi * pj.P(a, b).value()));
      w.residual_pi = std::max(w.residual_pi, std::abs(liePi(a, b).value() - w.chi * pj.Pi(a, b).value()));
    }
  w.residual_p /= w.scale;
  w.residual_pi /= w.scale;

  w.phi_bar = Grid<double, 1>(n);
  w.phi_star = Grid<double, 1>(n);
  w.chi_bar = Grid<double, 1>(n);
  w.chi_star = Grid<double, 1>(n);
  for (int a = 0; a < n; ++a) {
    double pb = 0, ps = 0, cb = 0, cs = 0;
    for (int r = 0; r < n; ++r) {
      pb += pj.Pud(r, a).value() * phi.partial_value_at(r);
      ps += pj.Piud(r, a).value() * phi.partial_value_at(r);
      cb += pj.Piud(r, a).value() * chi.partial_value_at(r);
      cs += pj.Pud(r, a).value() * chi.partial_value_at(r);
    }
    w.phi_bar(a) = pb;
    w.phi_star(a) = ps;
    w.chi_bar(a) = cb;
    w.chi_star(a) = cs;
  }

  if (v.phi) w.phi_declared_delta = std::abs(w.phi - eval_scalar(spec, v.phi, x));
  if (v.chi) w.chi_declared_delta = std::abs(w.chi - eval_scalar(spec, v.chi, x));
  return w;
}

inline BCVFWitness bcvf_check(const ManifoldSpec& spec, const std::string& name, const Point& x) {
  SpecSource src(spec);
  return bcvf_check(src, name, x);
}

// Transport identities along a verified candidate field. Both sides of every
// identity come from independent evaluations: the left by a Lie derivative of
// the stored tensor, the right from the extracted gauges and their projected
// gradients. Residuals are scaled max-abs over all components.
inline std::vector<IdentityResidual> bcvf_identity_suite(const GeometrySource& src, const std::string& name,
                                                         const Point& x,
                                                         double threshold = kDefaultThreshold) {
  const ManifoldSpec& spec = src.spec();
  const VectorSpec& v = detail::find_vector(spec, name);
  const BCVFWitness w = bcvf_check(src, name, x);
  if (!(w.max_residual() < threshold))
    throw error(errc::not_a_bcvf, "vector '" + name + "' fails the candidate check (scaled residual " +
                                      std::to_string(w.max_residual()) + " ≥ threshold " +
                                      std::to_string(threshold) + "); identities are not meaningful");

  const int n = src.dim();
  const Grid<Jet, 1> xi = detail::vector_jets(spec, v, x);
  Frame f = make_frame(src, x);
  const int p = f.p, q = n - f.p;

  const Grid<Jet, 2> lieP = lie_tensor02(xi, f.P);
  const Grid<Jet, 2> liePi = lie_tensor02(xi, f.Pi);
  const Jet phiJ = detail::gauge_jet(f.Puu, lieP, p, n);
  const Jet chiJ = detail::gauge_jet(f.Piuu, liePi, q, n);
  const double phi = phiJ.value(), chi = chiJ.value();

  // projected gauge gradients, value level
  std::vector<double> phiBar(n), phiStar(n), chiBar(n), chiStar(n), phiBarUp(n), chiBarUp(n);
  for (int a = 0; a < n; ++a) {
    double pb = 0, ps = 0, cb = 0, cs = 0;
    for (int r = 0; r < n; ++r) {
      pb += f.Pud(r, a).value() * phiJ.partial_value_at(r);
      ps += f.Piud(r, a).value() * phiJ.partial_value_at(r);
      cb += f.Piud(r, a).value() * chiJ.partial_value_at(r);
      cs += f.Pud(r, a).value() * chiJ.partial_value_at(r);
    }
    phiBar[a] = pb, phiStar[a] = ps, chiBar[a] = cb, chiStar[a] = cs;
  }
  for (int a = 0; a < n; ++a) {
    double pu = 0, cu = 0;
    for (int r = 0; r < n; ++r) {
      pu += f.ginv(a, r).value() * phiBar[r];
      cu += f.ginv(a, r).value() * chiBar[r];
    }
    phiBarUp[a] = pu, chiBarUp[a] = cu;
  }

  const double scale =
      1.0 + max_abs(values(f.g)) + max_abs(values(f.biconnRiem)) + max_abs(values(xi));
  std::vector<IdentityResidual> out;
  auto push = [&](std::string id, double raw) { out.push_back({std::move(id), raw / scale}); };

  {  // L_ξ g = φP + χΠ (the defining split of the metric deformation)
    const Grid<Jet, 2> lieg = lie_tensor02(xi, f.g);
    double r = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        r = std::max(r, std::abs(lieg(a, b).value() - phi * f.P(a, b).value() - chi * f.Pi(a, b).value()));
    push("metric_split", r);
  }
  {  // L_ξ P^a_b = 0
    const Grid<Jet, 2> lie = lie_tensor11(xi, f.Pud);
    push("mixed_projector", max_abs(values(lie)));
  }
  {  // L_ξ(P − Π) = ½(φ+χ)(P − Π) + ½(φ−χ)g
    const double alpha = 0.5 * (phi + chi), beta = 0.5 * (phi - chi);
    Grid<Jet, 2> S(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) S(a, b) = f.P(a, b) - f.Pi(a, b);
    const Grid<Jet, 2> lie = lie_tensor02(xi, S);
    double r = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        r = std::max(r, std::abs(lie(a, b).value() - alpha * S(a, b).value() - beta * f.g(a, b).value()));
    push("difference_split", r);
  }
  {  // L_ξ M_abc = φM_abc + (χ−φ)(P·M)_abc − P_bc φ*_a + Π_bc χ̄_a
    const Grid<Jet, 3> lie = lie_tensor03(xi, f.gradPsym);
    double r = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          double pm = 0;
          for (int d = 0; d < n; ++d) pm += f.Pud(d, a).value() * f.gradPsym(d, b, c).value();
          const double rhs = phi * f.gradPsym(a, b, c).value() + (chi - phi) * pm -
                             f.P(b, c).value() * phiStar[a] + f.Pi(b, c).value() * chiStar[a];
          r = std::max(r, std::abs(lie(a, b, c).value() - rhs));
        }
    push("grad_split", r);
  }
  {  // L_ξ E_a = −p φ*_a and L_ξ W_a = −(n−p) χ̄_a
    const Grid<Jet, 1> lieE = lie_covector(xi, f.volGradP);
    const Grid<Jet, 1> lieW = lie_covector(xi, f.volGradPi);
    double rE = 0, rW = 0;
    for (int a = 0; a < n; ++a) {
      rE = std::max(rE, std::abs(lieE(a).value() + p * phiStar[a]));
      rW = std::max(rW, std::abs(lieW(a).value() + q * chiStar[a]));
    }
    push("vol_gradient_p", rE);
    push("vol_gradient_pi", rW);
  }
  {  // L_ξ T_abc = φ(Π·T)_abc + χ(P·T)_abc
    const Grid<Jet, 3> lie = lie_tensor03(xi, f.twist);
    double r = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          r = std::max(r, std::abs(lie(a, b, c).value() - phi * f.twistPi(a, b, c).value() -
                                   chi * f.twistP(a, b, c).value()));
    push("twist_transport", r);
  }
  {  // mixed-index twist factors scale by the gauge difference
    Grid<Jet, 3> Tmix(n), Amix(n), Bmix(n);
    const Jet zero = Jet::constant(n, 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Jet s = zero;
          for (int r = 0; r < n; ++r) s = s + f.ginv(a, r) * f.twist(r, b, c);
          Tmix(a, b, c) = s;
        }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Jet sa = zero, sb = zero;
          for (int r = 0; r < n; ++r) {
            sa = sa + f.Pud(a, r) * Tmix(r, b, c);
            sb = sb + f.Piud(a, r) * Tmix(r, b, c);
          }
          Amix(a, b, c) = sa;
          Bmix(a, b, c) = sb;
        }
    const Grid<Jet, 3> lieA = lie_tensor12(xi, Amix);
    const Grid<Jet, 3> lieB = lie_tensor12(xi, Bmix);
    double rA = 0, rB = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          rA = std::max(rA, std::abs(lieA(a, b, c).value() - (chi - phi) * Amix(a, b, c).value()));
          rB = std::max(rB, std::abs(lieB(a, b, c).value() - (phi - chi) * Bmix(a, b, c).value()));
        }
    push("twist_p_scaling", rA);
    push("twist_pi_scaling", rB);
  }
  {  // 2 L_ξ γ̄^a_bc = φ̄_b P^a_c + φ̄_c P^a_b − φ̄^a P_cb + (Π, χ̄ analogue)
    const Grid<Jet, 3> lie = lie_connection(xi, f.biconn);
    double r = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const double rhs = phiBar[b] * f.Pud(a, c).value() + phiBar[c] * f.Pud(a, b).value() -
                             phiBarUp[a] * f.P(c, b).value() + chiBar[b] * f.Piud(a, c).value() +
                             chiBar[c] * f.Piud(a, b).value() - chiBarUp[a] * f.Pi(c, b).value();
          r = std::max(r, std::abs(2.0 * lie(a, b, c).value() - rhs));
        }
    push("biconn_gauge", r);
  }
  {  // L_ξ γ̄^a_bc = ∇̄_b ∇̄_c ξ^a + ξ^d R̄^a_cdb
    const Grid<Jet, 3> lie = lie_connection(xi, f.biconn);
    Grid<Jet, 2> K(n);  // [a][c] = ∇̄_c ξ^a
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        Jet s = xi(a).partial(c);
        for (int r = 0; r < n; ++r) s = s + f.biconn(a, r, c) * xi(r);
        K(a, c) = s;
      }
    double r = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Jet d2 = K(a, c).partial(b);
          for (int rr = 0; rr < n; ++rr)
            d2 = d2 + f.biconn(a, rr, b) * K(rr, c) - f.biconn(rr, c, b) * K(a, rr);
          double rhs = d2.value();
          for (int d = 0; d < n; ++d) rhs += xi(d).value() * f.biconnRiem(a, c, d, b).value();
          r = std::max(r, std::abs(lie(a, b, c).value() - rhs));
        }
    push("biconn_transport", r);
  }
  {  // invariant derived tensors: Lie derivatives vanish identically
    push("bar_gradP_invariant", max_abs(values(lie_tensor12(xi, f.barCovdPmixed))));
    push("lambda_invariant", max_abs(values(lie_tensor12(xi, f.lambda))));
    push("lambda_dual_invariant", max_abs(values(lie_tensor12(xi, f.lambdaBar))));
  }
  if (f.leafConfP && f.leafConfPi) {  // projected flatness factors are invariant too
    push("leaf_conf_invariant", max_abs(values(lie_tensor13(xi, *f.leafConfP))));
    push("leaf_conf_dual_invariant", max_abs(values(lie_tensor13(xi, *f.leafConfPi))));
  }
  return out;
}

inline std::vector<IdentityResidual> bcvf_identity_suite(const ManifoldSpec& spec, const std::string& name,
                                                         const Point& x,
                                                         double threshold = kDefaultThreshold) {
  SpecSource src(spec);
  return bcvf_identity_suite(src, name, x, threshold);
}

}  // namespace bcv
