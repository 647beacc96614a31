#pragma once

// Invariance of the leaf-conformal obstructions and of the adapted transport
// quantities under the block rescale g' = Z·P + X·Π, P' = Z·P.

#include <algorithm>
#include <memory>
#include <string_view>
#include <vector>

#include "bcv/compile.hpp"
#include "bcv/errors.hpp"
#include "bcv/frame.hpp"
#include "bcv/grid.hpp"
#include "bcv/parse.hpp"
#include "bcv/source.hpp"

namespace bcv {

inline double rescale_invariance_check(const ManifoldSpec& spec, ExprPtr leaf_factor,
                                       ExprPtr transverse_factor, const std::vector<Point>& samples) {
  auto base = std::make_shared<SpecSource>(spec);
  RescaledSource primed(base, leaf_factor, transverse_factor);

  // both factors must stay positive everywhere we look (the primed source
  // checks again at evaluation time; this gives the clearer message)
  for (const Point& x : samples) {
    EvalContext ctx(spec, x);
    if (ctx.eval(leaf_factor).value() <= 0.0)
      throw error(errc::non_positive_rescale, "leaf rescale factor is not positive at a sample point");
    if (ctx.eval(transverse_factor).value() <= 0.0)
      throw error(errc::non_positive_rescale,
                  "transverse rescale factor is not positive at a sample point");
  }

  auto relative_dev = [](const auto& a, const auto& b) {
    const auto va = values(a), vb = values(b);
    return max_abs_diff(va, vb) / (1.0 + std::max(max_abs(va), max_abs(vb)));
  };

  double worst = 0.0;
  for (const Point& x : samples) {
    Frame f0 = make_frame(*base, x);
    Frame f1 = make_frame(primed, x);
    const int q = f0.n - f0.p;
    if (f0.p < 3 || q < 3)
      throw error(errc::rank_excluded,
                  "leaf-conformal invariance needs both projector ranks at least 3, got " +
                      std::to_string(f0.p) + " and " + std::to_string(q));
    worst = std::max(worst, relative_dev(*f0.leafConfP, *f1.leafConfP));
    worst = std::max(worst, relative_dev(*f0.leafConfPi, *f1.leafConfPi));
    worst = std::max(worst, relative_dev(f0.barCovdPmixed, f1.barCovdPmixed));
    worst = std::max(worst, relative_dev(f0.lambda, f1.lambda));
  }
  return worst;
}

inline double rescale_invariance_check(const ManifoldSpec& spec, std::string_view leaf_factor,
                                       std::string_view transverse_factor,
                                       const std::vector<Point>& samples) {
  return rescale_invariance_check(spec, parse_expression(leaf_factor, spec),
                                  parse_expression(transverse_factor, spec), samples);
}

}  // namespace bcv
