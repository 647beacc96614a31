#include <catch2/catch_amalgamated.hpp>

#include "bcv/corpus.hpp"
#include "bcv/expr.hpp"
#include "bcv/parse.hpp"
#include "support/util.hpp"

using namespace bcv;
using testutil::code_of;
using testutil::vars_spec;

static const char* kSmall = R"(
manifold demo {
  dim 3;
  coords u, v, w;
  const a = 2.5;
  func f = a * sin(u) + v^2;
  metric {
    g[u,u] = 1 + f;
    g[v,v] = exp(w/3);
    g[w,w] = 1;
    g[u,v] = u*w/4;
  }
  projector block { leaf = u, v; }
  domain { u in [-1, 1]; v in [0.5, 1.5]; w in [-0.3, 0.3]; }
  vector k { xi[w] = 1; phi = 0; chi = 0; }
}
)";

TEST_CASE("manifold structure lands in the spec", "[parse]") {
  ManifoldSpec s = parse_manifold(kSmall);
  CHECK(s.name == "demo");
  CHECK(s.dim == 3);
  CHECK(s.coords == std::vector<std::string>{"u", "v", "w"});
  REQUIRE(s.constants.size() == 1);
  CHECK(s.constants[0].first == "a");
  CHECK(s.constants[0].second == 2.5);
  REQUIRE(s.funcs.size() == 1);

  // both symmetric slots hold the off-diagonal entry; untouched ones stay null
  CHECK(s.metric_at(0, 1) != nullptr);
  CHECK(s.metric_at(1, 0) == s.metric_at(0, 1));
  CHECK(s.metric_at(1, 2) == nullptr);

  CHECK(s.projector.form == ProjectorSpec::Form::block);
  CHECK(s.projector.leaf == std::vector<int>{0, 1});
  REQUIRE(s.domain.size() == 3);
  CHECK(s.domain[1].lo == 0.5);
  CHECK(s.domain[1].hi == 1.5);

  REQUIRE(s.vectors.size() == 1);
  CHECK(s.vectors[0].name == "k");
  CHECK(s.vectors[0].xi[0] == nullptr);
  CHECK(s.vectors[0].xi[2] != nullptr);
  CHECK(s.vectors[0].phi != nullptr);
}

TEST_CASE("every corpus source parses", "[parse]") {
  for (const auto& e : corpus()) {
    ManifoldSpec s = parse_manifold(e.dsl);
    CHECK(s.name == e.id);
    CHECK(s.dim >= 4);
  }
}

TEST_CASE("expression printing round-trips structurally", "[parse]") {
  auto spec = vars_spec({"x", "y"});
  for (std::string text : {
           "x + y*x - 3/(1 + x^2)",
           "-x^2",
           "sin(x)*cos(y) + exp(x/3)",
           "sqrt(1 + y^2)^(3/2)",
           "(x - y)^4 / (2 + x)",
       }) {
    ExprPtr once = parse_expression(text, spec);
    std::string printed = expr_to_string(once, spec.coords);
    ExprPtr twice = parse_expression(printed, spec);
    CHECK(expr_to_string(twice, spec.coords) == printed);
  }
}

TEST_CASE("unary minus binds tighter than the caret", "[parse]") {
  auto spec = vars_spec({"x"});
  ExprPtr e = parse_expression("-x^2", spec);
  CHECK(eval_scalar(spec, e, {2.0}) == 4.0);  // (-x)^2
  CHECK(eval_scalar(spec, parse_expression("0 - x^2", spec), {2.0}) == -4.0);
}

TEST_CASE("parse failures carry the right code", "[parse]") {
  CHECK(code_of([] { parse_manifold("manifold m { dim 3 }"); }) == errc::syntax);
  CHECK(code_of([] {
          parse_manifold(
              "manifold m { dim 2; coords x, x; metric { g[x,x]=1; } "
              "projector block { leaf = x; } domain { x in [-1,1]; } }");
        }) == errc::duplicate_definition);
  CHECK(code_of([] {
          parse_manifold(
              "manifold m { dim 2; coords x; metric { g[x,x]=1; } "
              "projector block { leaf = x; } domain { x in [-1,1]; } }");
        }) == errc::dimension_mismatch);
  CHECK(code_of([] {
          parse_manifold(
              "manifold m { dim 2; coords x, y; metric { g[x,x]=1; g[x,x]=2; g[y,y]=1; } "
              "projector block { leaf = x; } domain { x in [-1,1]; y in [-1,1]; } }");
        }) == errc::duplicate_definition);
  CHECK(code_of([] {
          parse_manifold(
              "manifold m { dim 2; coords x, y; metric { g[x,x]=1; g[y,y]=1; } "
              "projector block { leaf = x; } domain { x in [-1,1]; } }");
        }) == errc::dimension_mismatch);  // y has no interval
  CHECK(code_of([] {
          parse_manifold(
              "manifold m { dim 2; coords x, y; metric { g[x,x]=1; g[y,y]=qq; } "
              "projector block { leaf = x; } domain { x in [-1,1]; y in [-1,1]; } }");
        }) == errc::unknown_identifier);

  // syntax errors point into the source
  try {
    parse_manifold("manifold m { dim 3 }");
    FAIL("expected a syntax error");
  } catch (const syntax_error& e) {
    CHECK(e.offset() > 0);
  }
}

TEST_CASE("loose expression parsing rejects trailing input", "[parse]") {
  auto spec = vars_spec({"x"});
  CHECK(code_of([&] { parse_expression("x + 1 garbage", spec); }) == errc::syntax);
  CHECK(code_of([&] { parse_expression("y + 1", spec); }) == errc::unknown_identifier);
}
