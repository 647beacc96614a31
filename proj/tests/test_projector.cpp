#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "bcv/corpus.hpp"
#include "bcv/frame.hpp"
#include "bcv/metric_geometry.hpp"
#include "bcv/validate.hpp"
#include "support/util.hpp"

using namespace bcv;

namespace {

// worst violation of the projector axioms at one point
double axiom_residual(const Frame& f) {
  const int n = f.n;
  double worst = f.trace_defect;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // complementarity and symmetry
      worst = std::max(worst, std::abs(f.P(a, b).value() + f.Pi(a, b).value() - f.g(a, b).value()));
      worst = std::max(worst, std::abs(f.P(a, b).value() - f.P(b, a).value()));
      // idempotency and orthogonality in mixed position
      double pp = 0.0, ppi = 0.0;
      for (int r = 0; r < n; ++r) {
        pp += f.Pud(a, r).value() * f.Pud(r, b).value();
        ppi += f.Pud(a, r).value() * f.Piud(r, b).value();
      }
      worst = std::max(worst, std::abs(pp - f.Pud(a, b).value()));
      worst = std::max(worst, std::abs(ppi));
    }
  return worst;
}

}  // namespace

TEST_CASE("projector axioms hold on every corpus entry", "[projector]") {
  for (const auto& e : corpus()) {
    ManifoldSpec s = parse_manifold(e.dsl);
    SpecSource src(s);
    for (const Point& x : sample_points(s, 2, kDefaultSeed)) {
      Frame f = make_frame(src, x);
      INFO(e.id);
      CHECK(axiom_residual(f) < 1e-12);
      CHECK(f.p >= 1);
      CHECK(f.p <= f.n - 1);
    }
  }
}

TEST_CASE("normals-form and block-form projectors agree where both apply", "[projector]") {
  // same geometry written both ways: flat 3d, leaf = {x, y}
  const char* block_src = R"(
manifold both {
  dim 3;
  coords x, y, z;
  metric { g[x,x]=1; g[y,y]=1+x^2/4; g[z,z]=2; g[x,y]=x/5; }
  projector block { leaf = x, y; }
  domain { x in [-1,1]; y in [-1,1]; z in [-1,1]; }
}
)";
  const char* normals_src = R"(
manifold both {
  dim 3;
  coords x, y, z;
  metric { g[x,x]=1; g[y,y]=1+x^2/4; g[z,z]=2; g[x,y]=x/5; }
  projector normals { n1[z] = 1; }
  domain { x in [-1,1]; y in [-1,1]; z in [-1,1]; }
}
)";
  ManifoldSpec a = parse_manifold(block_src), b = parse_manifold(normals_src);
  SpecSource sa(a), sb(b);
  for (const Point& x : sample_points(a, 3, kDefaultSeed)) {
    Frame fa = make_frame(sa, x), fb = make_frame(sb, x);
    CHECK(max_abs_diff(values(fa.P), values(fb.P)) < 1e-14);
    CHECK(fa.p == fb.p);
  }
}

TEST_CASE("projector_eval reports rank and orthogonality", "[projector]") {
  ManifoldSpec s = parse_manifold(corpus_find("confsep5_curved_leaf")->dsl);
  Point x = sample_points(s, 1, kDefaultSeed)[0];
  auto data = SpecSource(s).at(x);
  ProjectorEval pe = projector_eval(data.g, data.P);
  CHECK(pe.rank == 3);
  CHECK(pe.idem_defect < 1e-12);
  CHECK(pe.sym_defect < 1e-12);
  CHECK(pe.compat_defect < 1e-12);
}

TEST_CASE("swapping the projector pair mirrors the frame", "[projector]") {
  ManifoldSpec s = parse_manifold(corpus_find("confsep6_mixed_leaves")->dsl);
  auto base = std::make_shared<SpecSource>(s);
  SwappedSource swapped(base);
  for (const Point& x : sample_points(s, 2, kDefaultSeed)) {
    Frame f = make_frame(*base, x), g = make_frame(swapped, x);
    CHECK(g.p == f.n - f.p);
    CHECK(max_abs_diff(values(f.P), values(g.Pi)) < 1e-14);
    CHECK(max_abs_diff(values(f.volGradP), values(g.volGradPi)) < 1e-12);
    CHECK(max_abs_diff(values(f.twistP), values(g.twistPi)) < 1e-12);
    CHECK(max_abs_diff(values(f.lambda), values(g.lambdaBar)) < 1e-12);
    // the full twist and the adapted connection are swap-invariant
    CHECK(max_abs_diff(values(f.twist), values(g.twist)) < 1e-12);
    CHECK(max_abs_diff(values(f.biconn), values(g.biconn)) < 1e-12);
  }
}

TEST_CASE("validation rejects broken inputs", "[projector]") {
  // cross-term between the declared blocks
  const char* crossed = R"(
manifold crossed {
  dim 3;
  coords x, y, z;
  metric { g[x,x]=1; g[y,y]=1; g[z,z]=1; g[x,z]=x/3; }
  projector block { leaf = x, y; }
  domain { x in [-1,1]; y in [-1,1]; z in [-1,1]; }
}
)";
  ManifoldSpec s = parse_manifold(crossed);
  CHECK(testutil::code_of([&] { validate_spec(s); }) == errc::block_split_cross_terms);

  // singular metric at the probe point
  const char* singular = R"(
manifold sing {
  dim 2;
  coords x, y;
  metric { g[x,x]=x; g[y,y]=1; }
  projector block { leaf = x; }
  domain { x in [-1,1]; y in [-1,1]; }
}
)";
  ManifoldSpec s2 = parse_manifold(singular);
  CHECK(testutil::code_of([&] { validate_spec(s2, {0.0, 0.0}); }) == errc::singular_metric);
}
