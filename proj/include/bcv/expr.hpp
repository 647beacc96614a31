#pragma once

#include <charconv>
#include <memory>
#include <string>
#include <vector>

#include "bcv/errors.hpp"

namespace bcv {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class ExprKind { number, coord, constant, subexpr, neg, add, sub, mul, div, pow, call };

enum class FuncId { sin, cos, tan, exp, log, sqrt };

inline const char* func_name(FuncId f) {
  switch (f) {
    case FuncId::sin: return "sin";
    case FuncId::cos: return "cos";
    case FuncId::tan: return "tan";
    case FuncId::exp: return "exp";
    case FuncId::log: return "log";
    case FuncId::sqrt: return "sqrt";
  }
  return "?";
}

// Immutable shared expression tree. Coordinates are resolved to indexes at
// parse time; constants and named subexpressions stay symbolic so specs can
// be printed back out losslessly.
struct ExprNode {
  ExprKind kind;
  double number = 0.0;
  int coord = -1;
  std::string name;
  FuncId func = FuncId::sin;
  long pow_num = 0, pow_den = 1;
  ExprPtr a, b;

  static ExprPtr make_number(double v) {
    auto e = std::make_shared<ExprNode>();
    e->kind = ExprKind::number;
    e->number = v;
    return e;
  }
  static ExprPtr make_coord(int i) {
    auto e = std::make_shared<ExprNode>();
    e->kind = ExprKind::coord;
    e->coord = i;
    return e;
  }
  static ExprPtr make_constant(std::string n) {
    auto e = std::make_shared<ExprNode>();
    e->kind = ExprKind::constant;
    e->name = std::move(n);
    return e;
  }
  static ExprPtr make_subexpr(std::string n) {
    auto e = std::make_shared<ExprNode>();
    e->kind = ExprKind::subexpr;
    e->name = std::move(n);
    return e;
  }
  static ExprPtr make_unary(ExprKind k, ExprPtr child) {
    auto e = std::make_shared<ExprNode>();
    e->kind = k;
    e->a = std::move(child);
    return e;
  }
  static ExprPtr make_binary(ExprKind k, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<ExprNode>();
    e->kind = k;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    return e;
  }
  static ExprPtr make_pow(ExprPtr base, long num, long den) {
    auto e = std::make_shared<ExprNode>();
    e->kind = ExprKind::pow;
    e->a = std::move(base);
    e->pow_num = num;
    e->pow_den = den;
    return e;
  }
  static ExprPtr make_call(FuncId f, ExprPtr arg) {
    auto e = std::make_shared<ExprNode>();
    e->kind = ExprKind::call;
    e->func = f;
    e->a = std::move(arg);
    return e;
  }
};

inline bool structurally_equal(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case ExprKind::number: return x->number == y->number;
    case ExprKind::coord: return x->coord == y->coord;
    case ExprKind::constant:
    case ExprKind::subexpr: return x->name == y->name;
    case ExprKind::neg: return structurally_equal(x->a, y->a);
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul:
    case ExprKind::div:
      return structurally_equal(x->a, y->a) && structurally_equal(x->b, y->b);
    case ExprKind::pow:
      return x->pow_num == y->pow_num && x->pow_den == y->pow_den && structurally_equal(x->a, y->a);
    case ExprKind::call: return x->func == y->func && structurally_equal(x->a, y->a);
  }
  return false;
}

// Shortest exact decimal for a double, so printed specs reparse bit-for-bit.
inline std::string number_to_string(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {
// Precedence levels for printing: additive 1, multiplicative 2, power 3,
// unary minus 4, atoms 5. Unary minus binds tighter than '^'.
inline int expr_level(const ExprNode& e) {
  switch (e.kind) {
    case ExprKind::add:
    case ExprKind::sub: return 1;
    case ExprKind::mul:
    case ExprKind::div: return 2;
    case ExprKind::pow: return 3;
    case ExprKind::neg: return 4;
    default: return 5;
  }
}

inline void print_expr_named(std::string& out, const ExprPtr& e, int min_level,
                             const std::vector<std::string>& coords) {
  int lvl = expr_level(*e);
  bool parens = lvl < min_level;
  if (parens) out += '(';
  switch (e->kind) {
    case ExprKind::number: out += number_to_string(e->number); break;
    case ExprKind::coord: out += coords[static_cast<std::size_t>(e->coord)]; break;
    case ExprKind::constant:
    case ExprKind::subexpr: out += e->name; break;
    case ExprKind::neg:
      out += '-';
      print_expr_named(out, e->a, 4, coords);
      break;
    case ExprKind::add:
      print_expr_named(out, e->a, 1, coords);
      out += " + ";
      print_expr_named(out, e->b, 2, coords);
      break;
    case ExprKind::sub:
      print_expr_named(out, e->a, 1, coords);
      out += " - ";
      print_expr_named(out, e->b, 2, coords);
      break;
    case ExprKind::mul:
      print_expr_named(out, e->a, 2, coords);
      out += '*';
      print_expr_named(out, e->b, 3, coords);
      break;
    case ExprKind::div:
      print_expr_named(out, e->a, 2, coords);
      out += '/';
      print_expr_named(out, e->b, 3, coords);
      break;
    case ExprKind::pow:
      print_expr_named(out, e->a, 4, coords);
      out += '^';
      if (e->pow_den == 1) {
        out += std::to_string(e->pow_num);
      } else {
        out += '(' + std::to_string(e->pow_num) + '/' + std::to_string(e->pow_den) + ')';
      }
      break;
    case ExprKind::call:
      out += func_name(e->func);
      out += '(';
      print_expr_named(out, e->a, 1, coords);
      out += ')';
      break;
  }
  if (parens) out += ')';
}
}  // namespace detail

inline std::string expr_to_string(const ExprPtr& e, const std::vector<std::string>& coords) {
  std::string out;
  detail::print_expr_named(out, e, 0, coords);
  return out;
}

}  // namespace bcv
