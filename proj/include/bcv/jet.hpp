#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bcv/errors.hpp"

namespace bcv {

// Truncated multivariate Taylor arithmetic ("jets") of fixed order 3.
// Order 3 is the deepest derivative the engine ever needs: one metric
// derivative for the connection, two for curvature, three for the
// Cotton-type obstructions.
inline constexpr int kJetOrder = 3;

// Coefficient layout shared by every jet with the same variable count.
// Multi-indexes are enumerated degree-major, then lexicographically by the
// (sorted) tuple of variable indexes, i.e. graded-lex on exponent vectors.
// coeffs[α] stores ∂^α f / α!, so f(x0+h) = Σ coeffs[α]·h^α + O(h^4).
struct JetTable {
  int nvars = 0;
  int count = 0;
  std::vector<std::vector<uint8_t>> expo;  // exponent vector per position
  std::vector<uint8_t> deg;                // |α| per position
  std::vector<double> fact;                // α! per position
  std::vector<int> degree_end;             // first position past each degree, size 4
  std::vector<std::vector<int>> shift;     // shift[v][k] = position(α_k + e_v), -1 past order
  std::vector<std::vector<std::pair<int, int>>> pairs;  // (i,j) with α_i + α_j = α_k

  explicit JetTable(int n) : nvars(n) {
    if (n < 1 || n > 31) throw error(errc::bad_argument, "jet variable count out of range");
    expo.emplace_back(n, 0);
    degree_end.push_back(1);
    for (int i = 0; i < n; ++i) {
      std::vector<uint8_t> a(n, 0);
      a[i] = 1;
      expo.push_back(std::move(a));
    }
    degree_end.push_back(static_cast<int>(expo.size()));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        std::vector<uint8_t> a(n, 0);
        ++a[i], ++a[j];
        expo.push_back(std::move(a));
      }
    degree_end.push_back(static_cast<int>(expo.size()));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          std::vector<uint8_t> a(n, 0);
          ++a[i], ++a[j], ++a[k];
          expo.push_back(std::move(a));
        }
    degree_end.push_back(static_cast<int>(expo.size()));
    count = static_cast<int>(expo.size());

    static const double kFact[4] = {1.0, 1.0, 2.0, 6.0};
    deg.resize(count);
    fact.resize(count);
    for (int k = 0; k < count; ++k) {
      int d = 0;
      double f = 1.0;
      for (int v = 0; v < n; ++v) {
        d += expo[k][v];
        f *= kFact[expo[k][v]];
      }
      deg[k] = static_cast<uint8_t>(d);
      fact[k] = f;
      index_.emplace(pack(expo[k]), k);
    }

    shift.assign(n, std::vector<int>(count, -1));
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < count; ++k) {
        if (deg[k] >= kJetOrder) continue;
        auto a = expo[k];
        ++a[v];
        shift[v][k] = position(a);
      }

    pairs.resize(count);
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j) {
        if (deg[i] + deg[j] > kJetOrder) continue;
        std::vector<uint8_t> a(n);
        for (int v = 0; v < n; ++v) a[v] = static_cast<uint8_t>(expo[i][v] + expo[j][v]);
        pairs[position(a)].emplace_back(i, j);
      }
  }

  int position(const std::vector<uint8_t>& alpha) const {
    auto it = index_.find(pack(alpha));
    return it == index_.end() ? -1 : it->second;
  }

 private:
  static uint64_t pack(const std::vector<uint8_t>& alpha) {
    uint64_t key = 0;
    for (std::size_t v = 0; v < alpha.size(); ++v) key |= static_cast<uint64_t>(alpha[v] & 3u) << (2 * v);
    return key;
  }
  std::unordered_map<uint64_t, int> index_;
};

inline const JetTable& jet_table(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<JetTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = tables[n];
  if (!slot) slot = std::make_unique<JetTable>(n);
  return *slot;
}

class Jet {
 public:
  Jet() = default;

  static Jet constant(int n, double v) {
    Jet j(n, kJetOrder);
    j.c_[0] = v;
    return j;
  }

  static Jet variable(int n, int i, double v) {
    if (i < 0 || i >= n) throw error(errc::bad_argument, "jet variable index out of range");
    Jet j(n, kJetOrder);
    j.c_[0] = v;
    j.c_[1 + i] = 1.0;
    return j;
  }

  int vars() const { return n_; }
  int order() const { return ord_; }
  bool empty() const { return n_ == 0; }
  double value() const { return c_.empty() ? 0.0 : c_[0]; }
  const std::vector<double>& coeffs() const { return c_; }
  double coeff(int pos) const { return c_[pos]; }

  // The actual partial derivative ∂^α f = α! · coeffs[α].
  double partial_value(const std::vector<uint8_t>& alpha) const {
    const JetTable& t = jet_table(n_);
    int pos = t.position(alpha);
    if (pos < 0) throw error(errc::bad_argument, "jet partial degree overflow");
    if (t.deg[pos] > ord_) throw error(errc::bad_argument, "jet partial beyond truncation order");
    return c_[pos] * t.fact[pos];
  }

  double partial_value_at(int v) const {
    std::vector<uint8_t> alpha(static_cast<std::size_t>(n_), 0);
    alpha[static_cast<std::size_t>(v)] = 1;
    return partial_value(alpha);
  }

  // Copy truncated to a lower order; cheapens downstream products whose
  // result order is known to be low anyway.
  Jet truncated(int ord) const {
    if (ord >= ord_) return *this;
    if (ord < 0) throw error(errc::bad_argument, "negative truncation order");
    Jet r(n_, ord);
    int limit = jet_table(n_).degree_end[ord];
    for (int k = 0; k < limit; ++k) r.c_[k] = c_[k];
    return r;
  }

  // Derivative with respect to variable v, one order lower.
  Jet partial(int v) const {
    if (ord_ < 1) throw error(errc::bad_argument, "jet partial of an order-0 jet");
    const JetTable& t = jet_table(n_);
    Jet r(n_, ord_ - 1);
    int limit = t.degree_end[ord_ - 1];
    for (int k = 0; k < limit; ++k) r.c_[k] = c_[t.shift[v][k]] * (t.expo[k][v] + 1);
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (double& x : r.c_) x = -x;
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    Jet r(a.n_, std::min(a.ord_, b.ord_));
    int limit = jet_table(a.n_).degree_end[r.ord_];
    for (int k = 0; k < limit; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    Jet r(a.n_, std::min(a.ord_, b.ord_));
    int limit = jet_table(a.n_).degree_end[r.ord_];
    for (int k = 0; k < limit; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    check_compatible(a, b);
    const JetTable& t = jet_table(a.n_);
    Jet r(a.n_, std::min(a.ord_, b.ord_));
    int limit = t.degree_end[r.ord_];
    for (int k = 0; k < limit; ++k) {
      double s = 0.0;
      for (const auto& [i, j] : t.pairs[k]) s += a.c_[i] * b.c_[j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

  friend Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c_[0] += s;
    return r;
  }
  friend Jet operator+(double s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, double s) { return a + (-s); }
  friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(const Jet& a, double s) {
    Jet r = a;
    for (double& x : r.c_) x *= s;
    return r;
  }
  friend Jet operator*(double s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
  friend Jet operator/(double s, const Jet& a) { return inverse(a) * s; }

  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator-=(const Jet& b) { return *this = *this - b; }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }

  // 1/b as a truncated geometric series around the constant term.
  friend Jet inverse(const Jet& b) {
    if (b.c_[0] == 0.0) throw error(errc::division_by_zero, "jet divisor has zero constant term");
    double b0 = b.c_[0];
    Jet u = b * (1.0 / b0);
    u.c_[0] = 0.0;
    Jet acc = 1.0 - u;         // 1 − u
    acc = 1.0 - u * acc;       // 1 − u + u²
    acc = 1.0 - u * acc;       // 1 − u + u² − u³
    return acc * (1.0 / b0);
  }

  // f(a) for univariate f given by its Taylor coefficients at a's constant
  // term: f(a0 + h) = c0 + c1·h + c2·h² + c3·h³ with h nilpotent.
  friend Jet compose(const Jet& a, double c0, double c1, double c2, double c3) {
    Jet h = a;
    h.c_[0] = 0.0;
    Jet h2 = h * h;
    Jet h3 = h2 * h;
    Jet r = h * c1 + h2 * c2 + h3 * c3;
    r.c_[0] += c0;
    return r;
  }

  friend Jet sin(const Jet& a) {
    double s = std::sin(a.value()), c = std::cos(a.value());
    return compose(a, s, c, -s / 2.0, -c / 6.0);
  }
  friend Jet cos(const Jet& a) {
    double s = std::sin(a.value()), c = std::cos(a.value());
    return compose(a, c, -s, -c / 2.0, s / 6.0);
  }
  friend Jet tan(const Jet& a) {
    if (std::abs(std::cos(a.value())) < 1e-14)
      throw error(errc::domain_error, "tan at a pole, argument " + std::to_string(a.value()));
    double t = std::tan(a.value());
    double s2 = 1.0 + t * t;
    return compose(a, t, s2, t * s2, s2 * (1.0 + 3.0 * t * t) / 3.0);
  }
  friend Jet exp(const Jet& a) {
    double e = std::exp(a.value());
    return compose(a, e, e, e / 2.0, e / 6.0);
  }
  friend Jet log(const Jet& a) {
    double a0 = a.value();
    if (a0 <= 0.0) throw error(errc::domain_error, "log of non-positive constant term " + std::to_string(a0));
    return compose(a, std::log(a0), 1.0 / a0, -1.0 / (2.0 * a0 * a0), 1.0 / (3.0 * a0 * a0 * a0));
  }
  friend Jet sqrt(const Jet& a) {
    double a0 = a.value();
    if (a0 < 0.0) throw error(errc::domain_error, "sqrt of negative constant term " + std::to_string(a0));
    if (a0 == 0.0) {
      for (double x : a.c_)
        if (x != 0.0) throw error(errc::domain_error, "sqrt at zero with nonzero higher coefficients");
      return a;
    }
    double s = std::sqrt(a0);
    return compose(a, s, 1.0 / (2.0 * s), -1.0 / (8.0 * a0 * s), 1.0 / (16.0 * a0 * a0 * s));
  }

  friend Jet pow(const Jet& a, long k) {
    if (k == 0) {
      Jet r = Jet::constant(a.vars(), 1.0);
      r.ord_ = a.ord_;
      r.c_.resize(a.c_.size());
      return r;
    }
    bool neg = k < 0;
    unsigned long e = neg ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    Jet base = a, acc = Jet::constant(a.vars(), 1.0);
    acc.ord_ = a.ord_;
    while (e) {
      if (e & 1u) acc = acc * base;
      if (e >>= 1) base = base * base;
    }
    return neg ? inverse(acc) : acc;
  }

  // a^(num/den) for a reduced fraction; integer exponents take the exact
  // repeated-multiplication path so polynomials stay polynomial.
  friend Jet pow_rational(const Jet& a, long num, long den) {
    if (den == 0) throw error(errc::bad_argument, "rational exponent with zero denominator");
    if (den < 0) num = -num, den = -den;
    if (den == 1) return pow(a, num);
    double a0 = a.value();
    if (a0 <= 0.0)
      throw error(errc::domain_error,
                  "fractional power needs a positive constant term, got " + std::to_string(a0));
    double q = static_cast<double>(num) / static_cast<double>(den);
    double c0 = std::pow(a0, q);
    double c1 = q * std::pow(a0, q - 1);
    double c2 = q * (q - 1) / 2.0 * std::pow(a0, q - 2);
    double c3 = q * (q - 1) * (q - 2) / 6.0 * std::pow(a0, q - 3);
    return compose(a, c0, c1, c2, c3);
  }

 private:
  Jet(int n, int ord) : n_(n), ord_(ord), c_(jet_table(n).count, 0.0) {}

  static void check_compatible(const Jet& a, const Jet& b) {
    if (a.n_ != b.n_) throw error(errc::bad_argument, "jet arithmetic across different variable counts");
  }

  int n_ = 0;
  int ord_ = kJetOrder;
  std::vector<double> c_;
};

}  // namespace bcv
