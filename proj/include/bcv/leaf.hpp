#pragma once

// Restriction of a block-split manifold to one factor. The complementary
// coordinates are frozen at a point and fold into the expressions as numbers,
// so the factor becomes a standalone manifold. This powers the leaf-metric
// oracles (intrinsic curvature, rank-3 Cotton tensor) that cross-check the
// adapted-connection pipeline.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bcv/errors.hpp"
#include "bcv/expr.hpp"
#include "bcv/grid.hpp"
#include "bcv/jet.hpp"
#include "bcv/manifold.hpp"
#include "bcv/metric_geometry.hpp"
#include "bcv/source.hpp"

namespace bcv {

struct BlockRestriction {
  ManifoldSpec spec;      // standalone factor manifold
  std::vector<int> kept;  // kept[i] = coordinate index in the parent

  Point restrict_point(const Point& x) const {
    Point y(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) y[i] = x[static_cast<std::size_t>(kept[i])];
    return y;
  }
};

namespace detail {

// rebuild e with kept coordinates renumbered and frozen ones replaced by
// their value at x; shares subtrees that contain no coordinates to remap
inline ExprPtr freeze_expr(const ExprPtr& e, const std::vector<int>& remap, const Point& x) {
  if (!e) return nullptr;
  switch (e->kind) {
    case ExprKind::number:
    case ExprKind::constant:
    case ExprKind::subexpr: return e;
    case ExprKind::coord: {
      int r = remap[static_cast<std::size_t>(e->coord)];
      if (r == e->coord) return e;
      if (r >= 0) return ExprNode::make_coord(r);
      return ExprNode::make_number(x[static_cast<std::size_t>(e->coord)]);
    }
    case ExprKind::neg: return ExprNode::make_unary(ExprKind::neg, freeze_expr(e->a, remap, x));
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul:
    case ExprKind::div:
      return ExprNode::make_binary(e->kind, freeze_expr(e->a, remap, x), freeze_expr(e->b, remap, x));
    case ExprKind::pow: return ExprNode::make_pow(freeze_expr(e->a, remap, x), e->pow_num, e->pow_den);
    case ExprKind::call: return ExprNode::make_call(e->func, freeze_expr(e->a, remap, x));
  }
  return e;
}

}  // namespace detail

// Keep one block of a block-split projector (the leaf side when
// leaf_side=true, the complement otherwise) and freeze the other at x.
inline BlockRestriction restrict_to_block(const ManifoldSpec& parent, bool leaf_side, const Point& x) {
  if (parent.projector.form != ProjectorSpec::Form::block)
    throw error(errc::not_block_split,
                "manifold '" + parent.name + "' does not declare a block-split projector");

  std::vector<bool> in_leaf(static_cast<std::size_t>(parent.dim), false);
  for (int c : parent.projector.leaf) in_leaf[static_cast<std::size_t>(c)] = true;

  BlockRestriction out;
  std::vector<int> remap(static_cast<std::size_t>(parent.dim), -1);
  for (int i = 0; i < parent.dim; ++i)
    if (in_leaf[static_cast<std::size_t>(i)] == leaf_side) {
      remap[static_cast<std::size_t>(i)] = static_cast<int>(out.kept.size());
      out.kept.push_back(i);
    }

  ManifoldSpec& s = out.spec;
  s.name = parent.name + (leaf_side ? "_leaf" : "_complement");
  s.dim = static_cast<int>(out.kept.size());
  for (int i : out.kept) {
    s.coords.push_back(parent.coords[static_cast<std::size_t>(i)]);
    s.domain.push_back(parent.domain[static_cast<std::size_t>(i)]);
  }
  s.constants = parent.constants;
  for (const auto& [k, e] : parent.funcs) s.funcs.emplace_back(k, detail::freeze_expr(e, remap, x));
  s.metric.assign(static_cast<std::size_t>(s.dim) * s.dim, nullptr);
  for (int a = 0; a < s.dim; ++a)
    for (int b = 0; b < s.dim; ++b)
      s.metric[static_cast<std::size_t>(a) * s.dim + b] = detail::freeze_expr(
          parent.metric_at(out.kept[static_cast<std::size_t>(a)], out.kept[static_cast<std::size_t>(b)]),
          remap, x);
  s.projector.form = ProjectorSpec::Form::block;
  for (int i = 0; i < s.dim; ++i) s.projector.leaf.push_back(i);  // trivial split
  return out;
}

// Cotton tensor of a 3-dimensional metric, in the normalization the adapted
// pipeline uses for its rank-3 flatness factor: C_abc = ∇_[a S_b]c with
// S = 2 Ric − ½ R g. A 3-metric is conformally flat iff this vanishes.
inline Grid<double, 3> cotton3_values(const ManifoldSpec& spec3, const Point& y) {
  if (spec3.dim != 3)
    throw error(errc::leaf_not_rank3,
                "Cotton oracle needs a 3-dimensional metric, got dim " + std::to_string(spec3.dim));
  SpecSource src(spec3);
  const Grid<Jet, 2> g = src.at(y).g;
  const Grid<Jet, 2> ginv = inverse_metric_jets(g);
  const Grid<Jet, 3> gamma = christoffel_jets(g, ginv);
  const Grid<Jet, 4> riem = connection_curvature_jets(gamma);
  const int n = 3;
  const Jet zero = Jet::constant(3, 0.0);

  Grid<Jet, 2> ric(n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      Jet s = zero;
      for (int r = 0; r < n; ++r) s = s + riem(r, b, r, c);
      ric(b, c) = s;
    }
  Jet scal = zero;
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) scal = scal + ginv(b, c) * ric(b, c);

  Grid<Jet, 2> S(n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) S(b, c) = 2.0 * ric(b, c) - 0.5 * scal * g(b, c);

  Grid<Jet, 3> covd(n);  // [b][c][a] = ∇_a S_bc
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) {
        Jet s = S(b, c).partial(a);
        for (int r = 0; r < n; ++r) s = s - gamma(r, b, a) * S(r, c) - gamma(r, c, a) * S(b, r);
        covd(b, c, a) = s;
      }

  Grid<double, 3> out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) out(a, b, c) = 0.5 * (covd(b, c, a).value() - covd(a, c, b).value());
  return out;
}

}  // namespace bcv
