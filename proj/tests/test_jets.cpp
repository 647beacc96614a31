#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bcv/compile.hpp"
#include "bcv/jet.hpp"
#include "bcv/parse.hpp"
#include "support/exprgen.hpp"
#include "support/fd.hpp"
#include "support/util.hpp"

using namespace bcv;
using testutil::code_of;
using testutil::vars_spec;

namespace {

Jet jet_of(const ManifoldSpec& spec, const std::string& text, const Point& x) {
  EvalContext ctx(spec, x);
  return ctx.eval(parse_expression(text, spec));
}

// every multi-index with 1 <= |alpha| <= 3
std::vector<std::vector<uint8_t>> all_alphas(int n) {
  std::vector<std::vector<uint8_t>> out;
  const JetTable& t = jet_table(n);
  for (int k = 1; k < t.count; ++k) out.emplace_back(t.expo[k].begin(), t.expo[k].end());
  return out;
}

}  // namespace

TEST_CASE("jet construction and coefficient storage", "[jets]") {
  Jet x = Jet::variable(3, 1, 0.7);
  CHECK(x.vars() == 3);
  CHECK(x.order() == kJetOrder);
  CHECK(x.value() == 0.7);
  CHECK(x.partial_value_at(1) == 1.0);
  CHECK(x.partial_value_at(0) == 0.0);
  CHECK(x.partial_value({0, 2, 0}) == 0.0);

  Jet c = Jet::constant(3, 4.25);
  CHECK(c.value() == 4.25);
  for (const auto& a : all_alphas(3)) CHECK(c.partial_value(a) == 0.0);

  CHECK_THROWS_AS(Jet::variable(3, 5, 0.0), error);
}

TEST_CASE("separable product matches closed-form partials", "[jets]") {
  auto spec = vars_spec({"x", "y"});
  Point x0 = {0.4, -0.3};
  Jet j = jet_of(spec, "sin(x) * exp(y)", x0);

  auto dsin = [&](int k) {
    switch (k % 4) {
      case 0: return std::sin(x0[0]);
      case 1: return std::cos(x0[0]);
      case 2: return -std::sin(x0[0]);
      default: return -std::cos(x0[0]);
    }
  };
  double ey = std::exp(x0[1]);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      std::vector<uint8_t> alpha = {static_cast<uint8_t>(a), static_cast<uint8_t>(b)};
      CHECK_THAT(j.partial_value(alpha), Catch::Matchers::WithinAbs(dsin(a) * ey, 1e-13));
    }
}

TEST_CASE("composite expression agrees with Richardson differences", "[jets]") {
  auto spec = vars_spec({"x", "y", "z"});
  Point x0 = {0.45, -0.2, 0.8};
  std::string text = "exp(sin(x) + x*y)/(2 + y^2) + sqrt(1 + z^2) * cos(x - z/2)";
  Jet j = jet_of(spec, text, x0);

  ExprPtr e = parse_expression(text, spec);
  fd::Fn f = [&](const std::vector<double>& p) { return eval_scalar(spec, e, p); };

  for (const auto& alpha : all_alphas(3)) {
    int order = 0;
    for (auto a : alpha) order += a;
    double h = order == 3 ? 0.05 : 1e-3;
    double want = fd::richardson(f, x0, alpha, h);
    double tol = order == 3 ? 1e-3 : 1e-5;
    CHECK_THAT(j.partial_value(alpha), Catch::Matchers::WithinAbs(want, tol));
  }
}

TEST_CASE("polynomial jets are exact", "[jets]") {
  auto spec = vars_spec({"x", "y", "z"});
  std::mt19937_64 rng(2025);
  Point x0 = {0.9, -0.7, 0.35};
  for (int trial = 0; trial < 10; ++trial) {
    exprgen::Poly poly = exprgen::gen_poly(rng, spec.coords, 5);
    Jet j = jet_of(spec, poly.text, x0);
    for (const auto& alpha : all_alphas(3)) {
      double want = poly.partial(x0, alpha);
      CHECK_THAT(j.partial_value(alpha), Catch::Matchers::WithinAbs(want, 1e-13 * (1.0 + std::abs(want))));
    }
  }
}

TEST_CASE("truncation arithmetic tracks the minimum order", "[jets]") {
  auto spec = vars_spec({"x", "y"});
  Jet j = jet_of(spec, "exp(x*y)", {0.3, 0.5});

  Jet d = j.partial(0);
  CHECK(d.order() == 2);
  // d/dx exp(xy) = y exp(xy)
  CHECK_THAT(d.value(), Catch::Matchers::WithinAbs(0.5 * std::exp(0.15), 1e-14));

  Jet t1 = j.truncated(1);
  CHECK(t1.order() == 1);
  CHECK((j * t1).order() == 1);
  CHECK((j + t1).order() == 1);
  CHECK_THROWS_AS(t1.partial_value({1, 1}), error);
  CHECK_THROWS_AS(j.truncated(-1), error);
}

TEST_CASE("inverse is the truncated geometric series", "[jets]") {
  auto spec = vars_spec({"x"});
  Jet j = jet_of(spec, "1/(1 + x)", {0.25});
  double u = 1.25;
  for (int k = 0; k <= 3; ++k) {
    double want = (k % 2 ? -1.0 : 1.0);
    for (int i = 0; i < k; ++i) want *= i + 1;  // k!
    want /= std::pow(u, k + 1);
    CHECK_THAT(j.partial_value({static_cast<uint8_t>(k)}), Catch::Matchers::WithinAbs(want, 1e-13));
  }
  CHECK(code_of([&] { jet_of(spec, "1/x", {0.0}); }) == errc::division_by_zero);
}

TEST_CASE("elementary functions guard their domains", "[jets]") {
  auto spec = vars_spec({"x"});
  CHECK(code_of([&] { jet_of(spec, "log(x)", {-1.0}); }) == errc::domain_error);
  CHECK(code_of([&] { jet_of(spec, "sqrt(x)", {-0.5}); }) == errc::domain_error);
  CHECK(code_of([&] { jet_of(spec, "tan(x)", {1.5707963267948966}); }) == errc::domain_error);
}

TEST_CASE("rational exponents", "[jets]") {
  auto spec = vars_spec({"x"});
  double x0 = 0.81;
  Jet j = jet_of(spec, "x^(3/2)", {x0});
  CHECK_THAT(j.value(), Catch::Matchers::WithinAbs(std::pow(x0, 1.5), 1e-14));
  CHECK_THAT(j.partial_value({1}), Catch::Matchers::WithinAbs(1.5 * std::sqrt(x0), 1e-13));
  CHECK_THAT(j.partial_value({2}), Catch::Matchers::WithinAbs(0.75 / std::sqrt(x0), 1e-13));
  CHECK_THAT(j.partial_value({3}), Catch::Matchers::WithinAbs(-0.375 * std::pow(x0, -1.5), 1e-12));

  // integer powers never leave polynomial arithmetic
  Jet p = jet_of(spec, "x^3", {-2.0});
  CHECK(p.value() == -8.0);
  CHECK(p.partial_value({3}) == 6.0);
}
