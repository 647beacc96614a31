#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>
#include <string_view>

#include "bcv/manifold.hpp"

namespace bcv {
namespace detail {

enum class Tok { ident, number, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;       // identifier text or single punct char
  double value = 0.0;     // numeric value
  bool integral = false;  // number had no '.' or exponent
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::end;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::ident;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      bool integral = true;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        integral = false;
        ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        integral = false;
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
          throw syntax_error(pos_, "malformed exponent in number literal");
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      tok_.kind = Tok::number;
      tok_.text = std::string(src_.substr(start, pos_ - start));
      tok_.value = std::strtod(tok_.text.c_str(), nullptr);
      tok_.integral = integral;
      return;
    }
    static const std::string punct = "{}[](),;=^+-*/";
    if (punct.find(c) != std::string::npos) {
      tok_.kind = Tok::punct;
      tok_.text = std::string(1, c);
      ++pos_;
      return;
    }
    throw syntax_error(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

inline const std::set<std::string>& reserved_names() {
  static const std::set<std::string> r = {"sin", "cos", "tan", "exp", "log", "sqrt"};
  return r;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  ManifoldSpec parse_manifold() {
    expect_keyword("manifold");
    spec_.name = expect_ident("manifold name");
    expect_punct('{');
    parse_dim();
    parse_coords();
    while (at_keyword("const")) parse_const();
    while (at_keyword("func")) parse_func();
    parse_metric();
    parse_projector();
    parse_domain();
    while (at_keyword("vector")) parse_vector();
    expect_punct('}');
    if (lex_.peek().kind != Tok::end)
      throw syntax_error(lex_.peek().offset, "trailing input after manifold block");
    return std::move(spec_);
  }

  // Standalone expression against an existing spec (CLI options, corpus
  // rescale factors, declared gauges supplied out of band).
  ExprPtr parse_expression(const ManifoldSpec& ctx) {
    spec_ = ctx;
    ExprPtr e = parse_expr();
    if (lex_.peek().kind != Tok::end)
      throw syntax_error(lex_.peek().offset, "trailing input after expression");
    return e;
  }

 private:
  // ---- token helpers ----
  bool at_punct(char c) const { return lex_.peek().kind == Tok::punct && lex_.peek().text[0] == c; }
  bool at_keyword(const char* kw) const { return lex_.peek().kind == Tok::ident && lex_.peek().text == kw; }

  bool accept_punct(char c) {
    if (!at_punct(c)) return false;
    lex_.next();
    return true;
  }
  void expect_punct(char c) {
    if (!at_punct(c))
      throw syntax_error(lex_.peek().offset,
                         std::string("expected '") + c + "', found '" + describe(lex_.peek()) + "'");
    lex_.next();
  }
  void expect_keyword(const char* kw) {
    if (!at_keyword(kw))
      throw syntax_error(lex_.peek().offset,
                         std::string("expected '") + kw + "', found '" + describe(lex_.peek()) + "'");
    lex_.next();
  }
  std::string expect_ident(const char* what) {
    if (lex_.peek().kind != Tok::ident)
      throw syntax_error(lex_.peek().offset,
                         std::string("expected ") + what + ", found '" + describe(lex_.peek()) + "'");
    return lex_.next().text;
  }
  long expect_int(const char* what) {
    if (lex_.peek().kind != Tok::number || !lex_.peek().integral)
      throw syntax_error(lex_.peek().offset, std::string("expected ") + what);
    return std::strtol(lex_.next().text.c_str(), nullptr, 10);
  }
  double expect_signed_number(const char* what) {
    bool neg = accept_punct('-');
    if (lex_.peek().kind != Tok::number)
      throw syntax_error(lex_.peek().offset, std::string("expected ") + what);
    double v = lex_.next().value;
    return neg ? -v : v;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::end: return "end of input";
      default: return t.text;
    }
  }

  void check_fresh_name(const std::string& name, std::size_t offset) {
    if (reserved_names().count(name))
      throw syntax_error(offset, "'" + name + "' is a reserved function name");
    if (spec_.coord_index(name) >= 0)
      throw error(errc::duplicate_definition, "'" + name + "' already names a coordinate");
    for (const auto& [k, v] : spec_.constants)
      if (k == name) throw error(errc::duplicate_definition, "'" + name + "' already names a constant");
    if (spec_.func_body(name))
      throw error(errc::duplicate_definition, "'" + name + "' already names a func");
  }

  int expect_coord_index() {
    std::size_t off = lex_.peek().offset;
    std::string name = expect_ident("coordinate name");
    int i = spec_.coord_index(name);
    if (i < 0)
      throw error(errc::dimension_mismatch,
                  "'" + name + "' is not a coordinate (offset " + std::to_string(off) + ")");
    return i;
  }

  // ---- sections ----
  void parse_dim() {
    expect_keyword("dim");
    long d = expect_int("dimension");
    if (d < 2 || d > 31) throw error(errc::dimension_mismatch, "dim must be between 2 and 31");
    spec_.dim = static_cast<int>(d);
    expect_punct(';');
  }

  void parse_coords() {
    expect_keyword("coords");
    do {
      std::size_t off = lex_.peek().offset;
      std::string name = expect_ident("coordinate name");
      check_fresh_name(name, off);
      spec_.coords.push_back(name);
    } while (accept_punct(','));
    expect_punct(';');
    if (static_cast<int>(spec_.coords.size()) != spec_.dim)
      throw error(errc::dimension_mismatch,
                  "declared " + std::to_string(spec_.coords.size()) + " coordinates for dim " +
                      std::to_string(spec_.dim));
    spec_.metric.assign(static_cast<std::size_t>(spec_.dim) * spec_.dim, nullptr);
    spec_.domain.assign(static_cast<std::size_t>(spec_.dim), Interval{});
    domain_set_.assign(static_cast<std::size_t>(spec_.dim), false);
  }

  void parse_const() {
    expect_keyword("const");
    std::size_t off = lex_.peek().offset;
    std::string name = expect_ident("constant name");
    check_fresh_name(name, off);
    expect_punct('=');
    double v = expect_signed_number("constant value");
    expect_punct(';');
    spec_.constants.emplace_back(name, v);
  }

  void parse_func() {
    expect_keyword("func");
    std::size_t off = lex_.peek().offset;
    std::string name = expect_ident("func name");
    check_fresh_name(name, off);
    expect_punct('=');
    ExprPtr e = parse_expr();
    expect_punct(';');
    spec_.funcs.emplace_back(name, std::move(e));
  }

  void parse_metric() {
    expect_keyword("metric");
    expect_punct('{');
    bool any = false;
    while (!at_punct('}')) {
      expect_keyword("g");
      expect_punct('[');
      int a = expect_coord_index();
      expect_punct(',');
      int b = expect_coord_index();
      expect_punct(']');
      expect_punct('=');
      ExprPtr e = parse_expr();
      expect_punct(';');
      std::size_t ab = static_cast<std::size_t>(a) * spec_.dim + b;
      std::size_t ba = static_cast<std::size_t>(b) * spec_.dim + a;
      if (spec_.metric[ab] || spec_.metric[ba])
        throw error(errc::duplicate_definition,
                    "metric component g[" + spec_.coords[a] + "," + spec_.coords[b] + "] set twice");
      spec_.metric[ab] = e;
      spec_.metric[ba] = e;
      any = true;
    }
    expect_punct('}');
    if (!any) throw error(errc::dimension_mismatch, "metric block is empty");
  }

  void parse_projector() {
    expect_keyword("projector");
    std::string form = expect_ident("projector form (block, normals, explicit)");
    if (form == "block") {
      spec_.projector.form = ProjectorSpec::Form::block;
      expect_punct('{');
      expect_keyword("leaf");
      expect_punct('=');
      std::vector<bool> seen(static_cast<std::size_t>(spec_.dim), false);
      do {
        int c = expect_coord_index();
        if (seen[static_cast<std::size_t>(c)])
          throw error(errc::duplicate_definition, "leaf coordinate '" + spec_.coords[c] + "' repeated");
        seen[static_cast<std::size_t>(c)] = true;
        spec_.projector.leaf.push_back(c);
      } while (accept_punct(','));
      expect_punct(';');
      expect_punct('}');
    } else if (form == "normals") {
      spec_.projector.form = ProjectorSpec::Form::normals;
      expect_punct('{');
      while (!at_punct('}')) {
        std::size_t off = lex_.peek().offset;
        std::string key = expect_ident("normal component n<k>");
        long idx = -1;
        if (key == "n") {
          idx = expect_int("normal index");
        } else if (key.size() > 1 && key[0] == 'n' &&
                   key.find_first_not_of("0123456789", 1) == std::string::npos) {
          idx = std::strtol(key.c_str() + 1, nullptr, 10);
        } else {
          throw syntax_error(off, "expected normal component n<k>[coord]");
        }
        if (idx < 1 || idx > spec_.dim) throw error(errc::dimension_mismatch, "normal index out of range");
        expect_punct('[');
        int a = expect_coord_index();
        expect_punct(']');
        expect_punct('=');
        ExprPtr e = parse_expr();
        expect_punct(';');
        if (spec_.projector.normals.size() < static_cast<std::size_t>(idx))
          spec_.projector.normals.resize(static_cast<std::size_t>(idx),
                                         std::vector<ExprPtr>(static_cast<std::size_t>(spec_.dim)));
        auto& slot = spec_.projector.normals[static_cast<std::size_t>(idx - 1)][static_cast<std::size_t>(a)];
        if (slot)
          throw error(errc::duplicate_definition,
                      "normal component n" + std::to_string(idx) + "[" + spec_.coords[a] + "] set twice");
        slot = e;
      }
      expect_punct('}');
      if (spec_.projector.normals.empty())
        throw error(errc::dimension_mismatch, "normals block declares no covectors");
      for (std::size_t i = 0; i < spec_.projector.normals.size(); ++i) {
        bool any = false;
        for (const auto& e : spec_.projector.normals[i]) any = any || (e != nullptr);
        if (!any)
          throw error(errc::degenerate_normals, "normal n" + std::to_string(i + 1) + " has no components");
      }
    } else if (form == "explicit") {
      spec_.projector.form = ProjectorSpec::Form::explicit_p;
      spec_.projector.entries.assign(static_cast<std::size_t>(spec_.dim) * spec_.dim, nullptr);
      expect_punct('{');
      while (!at_punct('}')) {
        expect_keyword("P");
        expect_punct('[');
        int a = expect_coord_index();
        expect_punct(',');
        int b = expect_coord_index();
        expect_punct(']');
        expect_punct('=');
        ExprPtr e = parse_expr();
        expect_punct(';');
        std::size_t ab = static_cast<std::size_t>(a) * spec_.dim + b;
        std::size_t ba = static_cast<std::size_t>(b) * spec_.dim + a;
        if (spec_.projector.entries[ab] || spec_.projector.entries[ba])
          throw error(errc::duplicate_definition,
                      "projector component P[" + spec_.coords[a] + "," + spec_.coords[b] + "] set twice");
        spec_.projector.entries[ab] = e;
        spec_.projector.entries[ba] = e;
      }
      expect_punct('}');
    } else {
      throw syntax_error(lex_.peek().offset, "unknown projector form '" + form + "'");
    }
  }

  void parse_domain() {
    expect_keyword("domain");
    expect_punct('{');
    while (!at_punct('}')) {
      int c = expect_coord_index();
      expect_keyword("in");
      expect_punct('[');
      double lo = expect_signed_number("interval bound");
      expect_punct(',');
      double hi = expect_signed_number("interval bound");
      expect_punct(']');
      expect_punct(';');
      if (domain_set_[static_cast<std::size_t>(c)])
        throw error(errc::duplicate_definition, "domain interval for '" + spec_.coords[c] + "' set twice");
      domain_set_[static_cast<std::size_t>(c)] = true;
      spec_.domain[static_cast<std::size_t>(c)] = Interval{lo, hi};
    }
    expect_punct('}');
    for (int c = 0; c < spec_.dim; ++c)
      if (!domain_set_[static_cast<std::size_t>(c)])
        throw error(errc::dimension_mismatch, "no domain interval for coordinate '" + spec_.coords[c] + "'");
  }

  void parse_vector() {
    expect_keyword("vector");
    std::size_t off = lex_.peek().offset;
    std::string name = expect_ident("vector name");
    check_fresh_name(name, off);
    for (const auto& v : spec_.vectors)
      if (v.name == name) throw error(errc::duplicate_definition, "vector '" + name + "' defined twice");
    VectorSpec v;
    v.name = name;
    v.xi.assign(static_cast<std::size_t>(spec_.dim), nullptr);
    expect_punct('{');
    bool any = false;
    while (at_keyword("xi")) {
      lex_.next();
      expect_punct('[');
      int a = expect_coord_index();
      expect_punct(']');
      expect_punct('=');
      ExprPtr e = parse_expr();
      expect_punct(';');
      if (v.xi[static_cast<std::size_t>(a)])
        throw error(errc::duplicate_definition,
                    "component xi[" + spec_.coords[a] + "] of vector '" + name + "' set twice");
      v.xi[static_cast<std::size_t>(a)] = e;
      any = true;
    }
    if (!any) throw syntax_error(lex_.peek().offset, "vector block needs at least one xi component");
    if (at_keyword("phi")) {
      lex_.next();
      expect_punct('=');
      v.phi = parse_expr();
      expect_punct(';');
    }
    if (at_keyword("chi")) {
      lex_.next();
      expect_punct('=');
      v.chi = parse_expr();
      expect_punct(';');
    }
    expect_punct('}');
    spec_.vectors.push_back(std::move(v));
  }

  // ---- expressions ----
  // expr  := term (('+'|'-') term)*            left associative
  // term  := factor (('*'|'/') factor)*        left associative
  // factor:= base ('^' exponent)?              one literal exponent
  // base  := '-' base | atom                   unary minus binds tighter than '^'
  // atom  := NUMBER | IDENT | FUNC '(' expr ')' | '(' expr ')'
  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept_punct('+'))
        lhs = ExprNode::make_binary(ExprKind::add, std::move(lhs), parse_term());
      else if (accept_punct('-'))
        lhs = ExprNode::make_binary(ExprKind::sub, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      if (accept_punct('*'))
        lhs = ExprNode::make_binary(ExprKind::mul, std::move(lhs), parse_factor());
      else if (accept_punct('/'))
        lhs = ExprNode::make_binary(ExprKind::div, std::move(lhs), parse_factor());
      else
        return lhs;
    }
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_base();
    if (accept_punct('^')) {
      auto [num, den] = parse_exponent();
      base = ExprNode::make_pow(std::move(base), num, den);
      if (at_punct('^'))
        throw syntax_error(lex_.peek().offset, "chained '^' needs parentheses");
    }
    return base;
  }

  ExprPtr parse_base() {
    if (accept_punct('-')) return ExprNode::make_unary(ExprKind::neg, parse_base());
    return parse_atom();
  }

  std::pair<long, long> parse_exponent() {
    bool neg = accept_punct('-');
    long num = 0, den = 1;
    if (accept_punct('(')) {
      if (accept_punct('-')) neg = !neg;
      num = expect_int("exponent numerator");
      expect_punct('/');
      den = expect_int("exponent denominator");
      expect_punct(')');
    } else {
      if (lex_.peek().kind != Tok::number)
        throw syntax_error(lex_.peek().offset, "expected numeric exponent");
      Token t = lex_.next();
      if (t.integral) {
        num = std::strtol(t.text.c_str(), nullptr, 10);
      } else {
        // decimal exponents are accepted only when they are exact quarters,
        // thirds or halves (value·12 integral)
        double scaled = t.value * 12.0;
        long r = std::lround(scaled);
        if (std::abs(scaled - r) > 1e-9)
          throw syntax_error(t.offset, "exponent must be an integer or a fraction with denominator <= 4");
        num = r;
        den = 12;
      }
    }
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
    if (num == 0) den = 1;
    if (den > 4)
      throw syntax_error(lex_.peek().offset, "exponent denominator must be <= 4");
    return {neg ? -num : num, den};
  }

  ExprPtr parse_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::number) return ExprNode::make_number(lex_.next().value);
    if (t.kind == Tok::ident) {
      Token id = lex_.next();
      if (reserved_names().count(id.text)) {
        expect_punct('(');
        ExprPtr arg = parse_expr();
        expect_punct(')');
        FuncId f = FuncId::sin;
        if (id.text == "sin") f = FuncId::sin;
        else if (id.text == "cos") f = FuncId::cos;
        else if (id.text == "tan") f = FuncId::tan;
        else if (id.text == "exp") f = FuncId::exp;
        else if (id.text == "log") f = FuncId::log;
        else f = FuncId::sqrt;
        return ExprNode::make_call(f, std::move(arg));
      }
      int c = spec_.coord_index(id.text);
      if (c >= 0) return ExprNode::make_coord(c);
      for (const auto& [k, v] : spec_.constants)
        if (k == id.text) return ExprNode::make_constant(id.text);
      if (spec_.func_body(id.text)) return ExprNode::make_subexpr(id.text);
      throw error(errc::unknown_identifier,
                  "'" + id.text + "' (offset " + std::to_string(id.offset) + ")");
    }
    if (accept_punct('(')) {
      ExprPtr e = parse_expr();
      expect_punct(')');
      return e;
    }
    throw syntax_error(t.offset, "expected expression, found '" + describe(t) + "'");
  }

  Lexer lex_;
  ManifoldSpec spec_;
  std::vector<bool> domain_set_;
};

}  // namespace detail

inline ManifoldSpec parse_manifold(std::string_view src) {
  detail::Parser p(src);
  return p.parse_manifold();
}

inline ExprPtr parse_expression(std::string_view src, const ManifoldSpec& ctx) {
  detail::Parser p(src);
  return p.parse_expression(ctx);
}

}  // namespace bcv
