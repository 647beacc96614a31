#include <catch2/catch_amalgamated.hpp>

#include "bcv/compile.hpp"
#include "bcv/lie.hpp"
#include "bcv/metric_geometry.hpp"
#include "bcv/parse.hpp"
#include "support/util.hpp"

using namespace bcv;
using testutil::vars_spec;

namespace {

struct FlatPlane {
  ManifoldSpec spec = vars_spec({"x", "y"});
  EvalContext ctx;
  explicit FlatPlane(Point p) : ctx(spec, p) {}

  Grid<Jet, 1> field(const std::string& fx, const std::string& fy) {
    Grid<Jet, 1> v(2);
    v(0) = ctx.eval(parse_expression(fx, spec));
    v(1) = ctx.eval(parse_expression(fy, spec));
    return v;
  }

  Grid<Jet, 2> euclid() {
    Grid<Jet, 2> g(2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) g(a, b) = Jet::constant(2, a == b ? 1.0 : 0.0);
    return g;
  }
};

}  // namespace

TEST_CASE("lie derivative of scalars is directional", "[lie]") {
  FlatPlane fp({0.3, -0.8});
  auto xi = fp.field("y", "x^2");
  Jet f = fp.ctx.eval(parse_expression("sin(x) + x*y", fp.spec));
  double want = -0.8 * (std::cos(0.3) + (-0.8)) + 0.09 * 0.3;
  CHECK_THAT(lie_scalar(xi, f).value(), Catch::Matchers::WithinAbs(want, 1e-14));
}

TEST_CASE("flat-space isometries and dilations", "[lie]") {
  FlatPlane fp({0.45, 0.2});
  Grid<Jet, 2> g = fp.euclid();

  auto rot = fp.field("y", "0 - x");
  CHECK(max_abs(values(lie_tensor02(rot, g))) < 1e-15);

  auto dil = fp.field("x", "y");
  Grid<double, 2> lg = values(lie_tensor02(dil, g));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK_THAT(lg(a, b), Catch::Matchers::WithinAbs(2.0 * (a == b ? 1.0 : 0.0), 1e-15));

  // special conformal generator: L_ξ g = 4x g on flat space
  auto conf = fp.field("x^2 - y^2", "2*x*y");
  Grid<double, 2> lc = values(lie_tensor02(conf, g));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK_THAT(lc(a, b), Catch::Matchers::WithinAbs(4.0 * 0.45 * (a == b ? 1.0 : 0.0), 1e-14));
}

TEST_CASE("vector bracket is antisymmetric and satisfies Jacobi", "[lie]") {
  FlatPlane fp({-0.35, 0.6});
  auto a = fp.field("y^2", "x");
  auto b = fp.field("sin(x)", "x*y");
  auto c = fp.field("1", "cos(y)");

  auto ab = lie_vector(a, b);
  auto ba = lie_vector(b, a);
  for (int i = 0; i < 2; ++i)
    CHECK_THAT(ab(i).value(), Catch::Matchers::WithinAbs(-ba(i).value(), 1e-14));

  // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0; brackets cost one order each,
  // so only the order-1 content of the result is meaningful
  auto j1 = lie_vector(lie_vector(a, b), c);
  auto j2 = lie_vector(lie_vector(b, c), a);
  auto j3 = lie_vector(lie_vector(c, a), b);
  for (int i = 0; i < 2; ++i)
    CHECK_THAT(j1(i).value() + j2(i).value() + j3(i).value(),
               Catch::Matchers::WithinAbs(0.0, 1e-13));
}

TEST_CASE("tensor lie derivatives obey the Leibniz rule", "[lie]") {
  FlatPlane fp({0.25, -0.4});
  auto xi = fp.field("x*y", "y^2 - x");
  auto v = fp.field("cos(y)", "x^3");
  Grid<Jet, 2> T(2);
  T(0, 0) = fp.ctx.eval(parse_expression("1 + x^2", fp.spec));
  T(0, 1) = fp.ctx.eval(parse_expression("x*y", fp.spec));
  T(1, 0) = fp.ctx.eval(parse_expression("y", fp.spec));
  T(1, 1) = fp.ctx.eval(parse_expression("exp(x/2)", fp.spec));

  // scalar T_ab v^a v^b: L_ξ(T(v,v)) = (L_ξT)(v,v) + 2T(L_ξv, v)
  Jet contracted = Jet::constant(2, 0.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) contracted += T(a, b) * v(a) * v(b);
  double lhs = lie_scalar(xi, contracted).value();

  auto lT = lie_tensor02(xi, T);
  auto lv = lie_vector(xi, v);
  double rhs = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      rhs += lT(a, b).value() * v(a).value() * v(b).value() +
             T(a, b).value() * (lv(a).value() * v(b).value() + v(a).value() * lv(b).value());
  CHECK_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-13));
}

TEST_CASE("lie derivative of a connection under an isometry vanishes", "[lie]") {
  // polar coordinates on the flat plane: nontrivial Γ, rotation ∂_φ is affine
  auto spec = vars_spec({"r", "ph"});
  Point x = {1.2, 0.6};
  EvalContext ctx(spec, x);
  Grid<Jet, 2> g(2);
  g(0, 0) = Jet::constant(2, 1.0);
  g(0, 1) = g(1, 0) = Jet::constant(2, 0.0);
  g(1, 1) = ctx.eval(parse_expression("r^2", spec));

  Grid<Jet, 3> gamma = christoffel_jets(g, inverse_metric_jets(g));
  Grid<Jet, 1> dphi(2);
  dphi(0) = Jet::constant(2, 0.0);
  dphi(1) = Jet::constant(2, 1.0);
  CHECK(max_abs(values(lie_connection(dphi, gamma))) < 1e-14);

  // radial translation is not affine for polar Γ
  Grid<Jet, 1> dr(2);
  dr(0) = Jet::constant(2, 1.0);
  dr(1) = Jet::constant(2, 0.0);
  CHECK(max_abs(values(lie_connection(dr, gamma))) > 1e-3);
}
