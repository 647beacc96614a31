#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "bcv/jet.hpp"
#include "bcv/manifold.hpp"

namespace bcv {

// Per-point evaluation of DSL expressions in the truncated jet ring.  Named
// funcs are memoized so shared subexpressions are expanded once per point.
class EvalContext {
 public:
  EvalContext(const ManifoldSpec& spec, const Point& x) : spec_(&spec), x_(x) {
    if (static_cast<int>(x.size()) != spec.dim)
      throw error(errc::dimension_mismatch, "point has " + std::to_string(x.size()) +
                                                " components, manifold has dim " +
                                                std::to_string(spec.dim));
    vars_.reserve(static_cast<std::size_t>(spec.dim));
    for (int i = 0; i < spec.dim; ++i)
      vars_.push_back(Jet::variable(spec.dim, i, x[static_cast<std::size_t>(i)]));
  }

  const ManifoldSpec& spec() const { return *spec_; }
  const Point& point() const { return x_; }
  const Jet& coord(int i) const { return vars_.at(static_cast<std::size_t>(i)); }

  Jet eval(const ExprPtr& e) {
    if (!e) return Jet::constant(spec_->dim, 0.0);
    return eval_node(*e);
  }

 private:
  Jet eval_node(const ExprNode& e) {
    switch (e.kind) {
      case ExprKind::number:
        return Jet::constant(spec_->dim, e.number);
      case ExprKind::coord:
        return vars_[static_cast<std::size_t>(e.coord)];
      case ExprKind::constant:
        return Jet::constant(spec_->dim, spec_->constant_value(e.name));
      case ExprKind::subexpr: {
        auto it = memo_.find(e.name);
        if (it != memo_.end()) return it->second;
        const ExprPtr* body = spec_->func_body(e.name);
        if (!body) throw error(errc::unknown_identifier, "func '" + e.name + "'");
        Jet v = eval_node(**body);
        memo_.emplace(e.name, v);
        return v;
      }
      case ExprKind::neg:
        return -eval_node(*e.a);
      case ExprKind::add:
        return eval_node(*e.a) + eval_node(*e.b);
      case ExprKind::sub:
        return eval_node(*e.a) - eval_node(*e.b);
      case ExprKind::mul:
        return eval_node(*e.a) * eval_node(*e.b);
      case ExprKind::div:
        return eval_node(*e.a) / eval_node(*e.b);
      case ExprKind::pow: {
        Jet base = eval_node(*e.a);
        if (e.pow_den == 1) return pow(base, e.pow_num);
        return pow_rational(base, e.pow_num, e.pow_den);
      }
      case ExprKind::call: {
        Jet a = eval_node(*e.a);
        switch (e.func) {
          case FuncId::sin: return sin(a);
          case FuncId::cos: return cos(a);
          case FuncId::tan: return tan(a);
          case FuncId::exp: return exp(a);
          case FuncId::log: return log(a);
          case FuncId::sqrt: return sqrt(a);
        }
        throw error(errc::bad_argument, "unknown function id");
      }
    }
    throw error(errc::bad_argument, "unknown expression node");
  }

  const ManifoldSpec* spec_;
  Point x_;
  std::vector<Jet> vars_;
  std::map<std::string, Jet> memo_;
};

// Plain double evaluation; same domain rules as the jet path.  Used by the
// finite-difference cross checks, where jets would defeat the purpose.
class ScalarEval {
 public:
  ScalarEval(const ManifoldSpec& spec, const Point& x) : spec_(&spec), x_(x) {
    if (static_cast<int>(x.size()) != spec.dim)
      throw error(errc::dimension_mismatch, "point size does not match dim");
  }

  double eval(const ExprPtr& e) {
    if (!e) return 0.0;
    return eval_node(*e);
  }

 private:
  double eval_node(const ExprNode& e) {
    switch (e.kind) {
      case ExprKind::number:
        return e.number;
      case ExprKind::coord:
        return x_[static_cast<std::size_t>(e.coord)];
      case ExprKind::constant:
        return spec_->constant_value(e.name);
      case ExprKind::subexpr: {
        auto it = memo_.find(e.name);
        if (it != memo_.end()) return it->second;
        const ExprPtr* body = spec_->func_body(e.name);
        if (!body) throw error(errc::unknown_identifier, "func '" + e.name + "'");
        double v = eval_node(**body);
        memo_.emplace(e.name, v);
        return v;
      }
      case ExprKind::neg:
        return -eval_node(*e.a);
      case ExprKind::add:
        return eval_node(*e.a) + eval_node(*e.b);
      case ExprKind::sub:
        return eval_node(*e.a) - eval_node(*e.b);
      case ExprKind::mul:
        return eval_node(*e.a) * eval_node(*e.b);
      case ExprKind::div: {
        double d = eval_node(*e.b);
        if (d == 0.0) throw error(errc::division_by_zero, "scalar division by zero");
        return eval_node(*e.a) / d;
      }
      case ExprKind::pow: {
        double b = eval_node(*e.a);
        if (e.pow_den == 1) {
          if (e.pow_num < 0 && b == 0.0) throw error(errc::division_by_zero, "0 raised to negative power");
          return std::pow(b, static_cast<double>(e.pow_num));
        }
        if (b <= 0.0) throw error(errc::domain_error, "fractional power of non-positive base");
        return std::pow(b, static_cast<double>(e.pow_num) / static_cast<double>(e.pow_den));
      }
      case ExprKind::call: {
        double a = eval_node(*e.a);
        switch (e.func) {
          case FuncId::sin: return std::sin(a);
          case FuncId::cos: return std::cos(a);
          case FuncId::tan: {
            if (std::abs(std::cos(a)) < 1e-14) throw error(errc::domain_error, "tan near pole");
            return std::tan(a);
          }
          case FuncId::exp: return std::exp(a);
          case FuncId::log:
            if (a <= 0.0) throw error(errc::domain_error, "log of non-positive value");
            return std::log(a);
          case FuncId::sqrt:
            if (a < 0.0) throw error(errc::domain_error, "sqrt of negative value");
            return std::sqrt(a);
        }
        throw error(errc::bad_argument, "unknown function id");
      }
    }
    throw error(errc::bad_argument, "unknown expression node");
  }

  const ManifoldSpec* spec_;
  Point x_;
  std::map<std::string, double> memo_;
};

inline double eval_scalar(const ManifoldSpec& spec, const ExprPtr& e, const Point& x) {
  ScalarEval ev(spec, x);
  return ev.eval(e);
}

}  // namespace bcv
