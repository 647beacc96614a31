#pragma once

// Richardson-extrapolated central differences: the derivative oracle the jet
// engine is compared against. Mixed partials compose one-variable central
// stencils, so every estimate has O(h^2) error and extrapolates with factor 4.

#include <cstdint>
#include <functional>
#include <vector>

namespace fd {

using Fn = std::function<double(const std::vector<double>&)>;

inline double stencil(const Fn& f, const std::vector<double>& x,
                      const std::vector<uint8_t>& alpha, double h) {
  int v = -1;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] > 0) {
      v = static_cast<int>(i);
      break;
    }
  if (v < 0) return f(x);

  std::vector<uint8_t> rest = alpha;
  rest[static_cast<std::size_t>(v)] = 0;
  auto shifted = [&](double dt) {
    std::vector<double> y = x;
    y[static_cast<std::size_t>(v)] += dt;
    return stencil(f, y, rest, h);
  };
  switch (alpha[static_cast<std::size_t>(v)]) {
    case 1: return (shifted(h) - shifted(-h)) / (2.0 * h);
    case 2: return (shifted(h) - 2.0 * shifted(0.0) + shifted(-h)) / (h * h);
    case 3:
      return (shifted(2.0 * h) - 2.0 * shifted(h) + 2.0 * shifted(-h) - shifted(-2.0 * h)) /
             (2.0 * h * h * h);
    default: return 0.0;  // orders above 3 are outside the jet truncation
  }
}

inline double richardson(const Fn& f, const std::vector<double>& x,
                         const std::vector<uint8_t>& alpha, double h) {
  double coarse = stencil(f, x, alpha, h);
  double fine = stencil(f, x, alpha, h / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace fd
