#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bcv/lie.hpp"
#include "bcv/metric_geometry.hpp"
#include "bcv/parse.hpp"
#include "bcv/sampling.hpp"
#include "bcv/source.hpp"

using namespace bcv;

namespace {

Grid<Jet, 2> metric_jets_at(const ManifoldSpec& s, const Point& x) { return SpecSource(s).at(x).g; }

ManifoldSpec sphere2(double radius) {
  std::string src = "manifold s2 { dim 2; coords th, ph;"
                    " const a = " + std::to_string(radius) + ";"
                    " metric { g[th,th] = a^2; g[ph,ph] = a^2 * sin(th)^2; }"
                    " projector block { leaf = th; }"
                    " domain { th in [0.6, 2.4]; ph in [-3, 3]; } }";
  return parse_manifold(src);
}

}  // namespace

TEST_CASE("round 2-sphere curvature in closed form", "[metric]") {
  double a = 1.7;
  ManifoldSpec s = sphere2(a);
  for (const Point& x : sample_points(s, 3, kDefaultSeed)) {
    CurvatureEval cv = curvature_eval(metric_jets_at(s, x));
    CHECK_THAT(cv.scalar, Catch::Matchers::WithinAbs(2.0 / (a * a), 1e-11));
    // R_abcd = K (g_ac g_bd − g_ad g_bc) with K = 1/a²
    MetricEval me = metric_eval(metric_jets_at(s, x));
    double K = 1.0 / (a * a);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            double want = K * (me.g(i, k) * me.g(j, l) - me.g(i, l) * me.g(j, k));
            CHECK_THAT(cv.riemann_low(i, j, k, l), Catch::Matchers::WithinAbs(want, 1e-11));
          }
    // Ricci = (1/a²) g in 2d
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK_THAT(cv.ricci(i, j), Catch::Matchers::WithinAbs(K * me.g(i, j), 1e-11));
  }
}

TEST_CASE("round 3-sphere scalar curvature", "[metric]") {
  double a = 0.9;
  std::string src = "manifold s3 { dim 3; coords x1, x2, x3;"
                    " const a = " + std::to_string(a) + ";"
                    " metric { g[x1,x1] = a^2; g[x2,x2] = a^2*sin(x1)^2;"
                    "          g[x3,x3] = a^2*sin(x1)^2*sin(x2)^2; }"
                    " projector block { leaf = x1; }"
                    " domain { x1 in [0.7, 2.3]; x2 in [0.7, 2.3]; x3 in [-3, 3]; } }";
  ManifoldSpec s = parse_manifold(src);
  for (const Point& x : sample_points(s, 3, kDefaultSeed)) {
    CurvatureEval cv = curvature_eval(metric_jets_at(s, x));
    CHECK_THAT(cv.scalar, Catch::Matchers::WithinAbs(6.0 / (a * a), 1e-10));
    // weyl vanishes identically in 3 dimensions
    CHECK(max_abs(cv.weyl) < 1e-11);
  }
}

TEST_CASE("static spherically symmetric vacuum solution is Ricci flat", "[metric]") {
  const char* src = R"(
manifold vac {
  dim 4;
  coords t, r, th, ph;
  const m = 0.2;
  func f = 1 - 2*m/r;
  metric {
    g[t,t] = f; g[r,r] = 1/f;
    g[th,th] = r^2; g[ph,ph] = r^2 * sin(th)^2;
  }
  projector normals { n1[t] = 1; }
  domain { t in [-1,1]; r in [2.5, 4]; th in [0.8, 2.2]; ph in [-3,3]; }
}
)";
  ManifoldSpec s = parse_manifold(src);
  for (const Point& x : sample_points(s, 3, kDefaultSeed)) {
    CurvatureEval cv = curvature_eval(metric_jets_at(s, x));
    CHECK(max_abs(cv.ricci) < 1e-10);
    CHECK(std::abs(cv.scalar) < 1e-10);
    // but it is genuinely curved
    CHECK(max_abs(cv.riemann_low) > 1e-3);
  }
}

TEST_CASE("levi-civita connection is metric compatible", "[metric]") {
  ManifoldSpec s = sphere2(1.3);
  Point x = sample_points(s, 1, kDefaultSeed)[0];
  Grid<Jet, 2> gj = metric_jets_at(s, x);
  Grid<Jet, 3> gamma = christoffel_jets(gj, inverse_metric_jets(gj));
  const int n = 2;
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Jet covd = gj(a, b).partial(c);
        for (int r = 0; r < n; ++r) covd -= gamma(r, a, c) * gj(r, b) + gamma(r, b, c) * gj(a, r);
        worst = std::max(worst, std::abs(covd.value()));
      }
  CHECK(worst < 1e-13);
}

TEST_CASE("contracted second Bianchi identity", "[metric]") {
  // generic curved 3-metric, no symmetry to hide behind
  const char* src = R"(
manifold bumpy {
  dim 3;
  coords x, y, z;
  metric {
    g[x,x] = 1 + x^2/3 + z/5; g[y,y] = 1 + sin(x)/4 + y^2/6; g[z,z] = 1 + exp(y/3)/2;
    g[x,y] = x*z/8; g[y,z] = y/7;
  }
  projector normals { n1[z] = 1; }
  domain { x in [-0.8,0.8]; y in [-0.8,0.8]; z in [-0.8,0.8]; }
}
)";
  ManifoldSpec s = parse_manifold(src);
  const int n = 3;
  for (const Point& x : sample_points(s, 2, kDefaultSeed)) {
    Grid<Jet, 2> gj = metric_jets_at(s, x);
    Grid<Jet, 2> ginv = inverse_metric_jets(gj);
    Grid<Jet, 3> gamma = christoffel_jets(gj, ginv);
    Grid<Jet, 4> riem = connection_curvature_jets(gamma);

    Grid<Jet, 2> ric(n);
    const Jet zero = Jet::constant(n, 0.0).truncated(riem(0, 0, 0, 0).order());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Jet sum = zero;
        for (int r = 0; r < n; ++r) sum += riem(r, a, r, b);
        ric(a, b) = sum;
      }
    Jet scal = zero;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) scal += ginv(a, b) * ric(a, b);

    // Einstein tensor mixed: G^a_b = g^{ar}R_rb − ½ δ^a_b R
    Grid<Jet, 2> Gmix(n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Jet sum = zero;
        for (int r = 0; r < n; ++r) sum += ginv(a, r) * ric(r, b);
        if (a == b) sum -= 0.5 * scal;
        Gmix(a, b) = sum;
      }
    double worst = 0.0;
    for (int b = 0; b < n; ++b) {
      double div = 0.0;
      for (int a = 0; a < n; ++a) {
        div += Gmix(a, b).partial(a).value();
        for (int r = 0; r < n; ++r)
          div += gamma(a, r, a).value() * Gmix(r, b).value() -
                 gamma(r, b, a).value() * Gmix(a, r).value();
      }
      worst = std::max(worst, std::abs(div));
    }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("killing fields of the sphere annihilate the metric", "[metric]") {
  ManifoldSpec s = sphere2(1.0);
  Point x = {1.1, 0.7};
  EvalContext ctx(s, x);
  Grid<Jet, 2> gj = metric_jets_at(s, x);

  // rotation about the z-axis: ∂_φ
  Grid<Jet, 1> dphi(2);
  dphi(0) = Jet::constant(2, 0.0);
  dphi(1) = Jet::constant(2, 1.0);
  CHECK(max_abs(values(lie_tensor02(dphi, gj))) < 1e-14);

  // rotation about the x-axis: sinφ ∂_θ + cotθ cosφ ∂_φ
  Grid<Jet, 1> rx(2);
  rx(0) = ctx.eval(parse_expression("sin(ph)", s));
  rx(1) = ctx.eval(parse_expression("cos(ph) * cos(th) / sin(th)", s));
  CHECK(max_abs(values(lie_tensor02(rx, gj))) < 1e-13);

  // a non-isometry for contrast
  Grid<Jet, 1> bad(2);
  bad(0) = ctx.eval(parse_expression("th", s));
  bad(1) = Jet::constant(2, 0.0);
  CHECK(max_abs(values(lie_tensor02(bad, gj))) > 1e-2);
}
