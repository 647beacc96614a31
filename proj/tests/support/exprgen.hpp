#pragma once

// Seeded random expressions over named coordinates, kept inside every
// elementary function's domain for |coord| <= 1.2 plus finite-difference
// shifts: sqrt/log arguments are bounded below by 1, divisors by 2.

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace exprgen {

inline std::string gen(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto num = [&] {
    char b[32];
    std::snprintf(b, sizeof b, "%.3f", std::uniform_real_distribution<double>(0.3, 2.0)(rng));
    return std::string(b);
  };
  if (depth == 0 || pick(5) == 0)
    return pick(4) ? vars[static_cast<std::size_t>(pick(static_cast<int>(vars.size())))] : num();
  switch (pick(9)) {
    case 0: return "(" + gen(rng, vars, depth - 1) + " + " + gen(rng, vars, depth - 1) + ")";
    case 1: return "(" + gen(rng, vars, depth - 1) + " - " + gen(rng, vars, depth - 1) + ")";
    case 2: return "(" + gen(rng, vars, depth - 1) + ") * (" + gen(rng, vars, depth - 1) + ")";
    case 3: return "(" + gen(rng, vars, depth - 1) + ") / (2 + (" + gen(rng, vars, depth - 1) + ")^2)";
    case 4: return "sin(" + gen(rng, vars, depth - 1) + ")";
    case 5: return "cos(" + gen(rng, vars, depth - 1) + ")";
    case 6: return "exp((" + gen(rng, vars, depth - 1) + ")/3)";
    case 7: return "sqrt(1 + (" + gen(rng, vars, depth - 1) + ")^2)";
    case 8: return "log(2 + (" + gen(rng, vars, depth - 1) + ")^2)";
  }
  return num();
}

// polynomial as an explicit monomial list, so tests can differentiate it in
// closed form; string form uses only +, *, ^ and stays jet-exact
struct Monomial {
  double c;
  std::vector<int> e;  // exponent per variable
};

struct Poly {
  std::vector<Monomial> terms;
  std::string text;

  double partial(const std::vector<double>& x, const std::vector<uint8_t>& alpha) const {
    double sum = 0.0;
    for (const auto& m : terms) {
      double t = m.c;
      for (std::size_t i = 0; i < m.e.size(); ++i) {
        int e = m.e[i], a = alpha[i];
        if (e < a) {
          t = 0.0;
          break;
        }
        for (int k = 0; k < a; ++k) t *= e - k;
        for (int k = 0; k < e - a; ++k) t *= x[i];
      }
      sum += t;
    }
    return sum;
  }
};

inline Poly gen_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int terms) {
  Poly p;
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    m.c = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    m.e.assign(vars.size(), 0);
    int degree = pick(4);  // total degree 0..3, the full truncation range
    for (int d = 0; d < degree; ++d) ++m.e[static_cast<std::size_t>(pick(static_cast<int>(vars.size())))];
    p.terms.push_back(m);

    char b[40];
    std::snprintf(b, sizeof b, "%.17g", m.c);  // round-trip exact through the parser
    std::string term = b;
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (int k = 0; k < m.e[i]; ++k) term += " * " + vars[i];
    p.text += (t ? " + " : "") + ("(" + term + ")");
  }
  return p;
}

}  // namespace exprgen
