#include <catch2/catch_amalgamated.hpp>

#include "bcv/bcvf.hpp"
#include "bcv/corpus.hpp"
#include "support/util.hpp"

using namespace bcv;

TEST_CASE("flat product generators are recognized with their gauges", "[bcvf]") {
  ManifoldSpec s = parse_manifold(corpus_find("flat33_decomposable")->dsl);
  auto pts = sample_points(s, 3, kDefaultSeed);
  for (const auto& v : s.vectors)
    for (const Point& x : pts) {
      BCVFWitness w = bcvf_check(s, v.name, x);
      INFO(v.name);
      CHECK(w.max_residual() < 1e-12);
      REQUIRE(w.phi_declared_delta.has_value());
      REQUIRE(w.chi_declared_delta.has_value());
      CHECK(*w.phi_declared_delta < 1e-12);
      CHECK(*w.chi_declared_delta < 1e-12);
    }
}

TEST_CASE("gauge gradients split along the projector blocks", "[bcvf]") {
  ManifoldSpec s = parse_manifold(corpus_find("flat33_decomposable")->dsl);
  Point x = sample_points(s, 1, kDefaultSeed)[0];

  // leaf-side special conformal generator: dφ is a leaf covector, dχ = 0
  BCVFWitness w = bcvf_check(s, "c1", x);
  CHECK(max_abs(w.phi_bar) > 1e-2);
  CHECK(max_abs(w.phi_star) < 1e-12);
  CHECK(max_abs(w.chi_bar) < 1e-12);
  CHECK(max_abs(w.chi_star) < 1e-12);

  // transverse-side generator mirrors it
  BCVFWitness e = bcvf_check(s, "e2", x);
  CHECK(max_abs(e.chi_bar) > 1e-2);
  CHECK(max_abs(e.chi_star) < 1e-12);
  CHECK(max_abs(e.phi_bar) < 1e-12);
}

TEST_CASE("transport identity suite passes on curved-split generators", "[bcvf]") {
  ManifoldSpec s = parse_manifold(corpus_find("biconf_flat33")->dsl);
  auto pts = sample_points(s, 2, kDefaultSeed);
  for (const auto& v : s.vectors)
    for (const Point& x : pts) {
      auto suite = bcvf_identity_suite(s, v.name, x);
      CHECK(suite.size() >= 16);
      for (const auto& r : suite) {
        INFO(v.name << " / " << r.id);
        CHECK(r.residual < 1e-12);
      }
    }
}

TEST_CASE("killing fields of the warped family pass with zero gauges", "[bcvf]") {
  for (const char* id : {"warped_product4_generic", "warped_product4_special"}) {
    ManifoldSpec s = parse_manifold(corpus_find(id)->dsl);
    Point x = sample_points(s, 1, kDefaultSeed)[0];
    for (const auto& v : s.vectors) {
      BCVFWitness w = bcvf_check(s, v.name, x);
      INFO(id << " / " << v.name);
      CHECK(w.max_residual() < 1e-12);
      CHECK(std::abs(w.phi) < 1e-12);
      CHECK(std::abs(w.chi) < 1e-12);
    }
  }
}

TEST_CASE("non-bcvf fields are rejected, not silently scored", "[bcvf]") {
  // flat 3+3 with a field that is conformal on neither block
  const char* src = R"(
manifold bad {
  dim 6;
  coords x1, x2, x3, y1, y2, y3;
  metric {
    g[x1,x1]=1; g[x2,x2]=1; g[x3,x3]=1;
    g[y1,y1]=1; g[y2,y2]=1; g[y3,y3]=1;
  }
  projector block { leaf = x1, x2, x3; }
  domain {
    x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1];
    y1 in [-1,1]; y2 in [-1,1]; y3 in [-1,1];
  }
  vector warp { xi[x1] = x2; xi[x2] = x2; phi = 0; chi = 0; }
}
)";
  ManifoldSpec s = parse_manifold(src);
  Point x = sample_points(s, 1, kDefaultSeed)[0];

  BCVFWitness w = bcvf_check(s, "warp", x);
  CHECK(w.max_residual() > 1e-2);
  CHECK(testutil::code_of([&] { bcvf_identity_suite(s, "warp", x); }) == errc::not_a_bcvf);
  CHECK(testutil::code_of([&] { bcvf_check(s, "nope", x); }) == errc::unknown_vector);
}
