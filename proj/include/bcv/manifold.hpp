#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bcv/expr.hpp"

namespace bcv {

using Point = std::vector<double>;

struct Interval {
  double lo = 0.0, hi = 0.0;
};

// Candidate vector field: components by coordinate plus optional declared
// gauge functions to compare the extracted gauges against.
struct VectorSpec {
  std::string name;
  std::vector<ExprPtr> xi;  // size n, unset components stay null (== 0)
  ExprPtr phi, chi;
};

struct ProjectorSpec {
  enum class Form { block, normals, explicit_p };
  Form form = Form::block;
  std::vector<int> leaf;                       // block: member coordinate indexes
  std::vector<std::vector<ExprPtr>> normals;   // normals: k covectors × n components
  std::vector<ExprPtr> entries;                // explicit: n·n symmetric, row-major
};

struct ManifoldSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> coords;
  std::vector<std::pair<std::string, double>> constants;  // declaration order
  std::vector<std::pair<std::string, ExprPtr>> funcs;
  std::vector<ExprPtr> metric;  // n·n, both symmetric slots filled, null = never written
  ProjectorSpec projector;
  std::vector<Interval> domain;  // per coordinate
  std::vector<VectorSpec> vectors;

  const ExprPtr& metric_at(int a, int b) const { return metric[static_cast<std::size_t>(a) * dim + b]; }

  int coord_index(const std::string& name) const {
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] == name) return static_cast<int>(i);
    return -1;
  }

  double constant_value(const std::string& name) const {
    for (const auto& [k, v] : constants)
      if (k == name) return v;
    throw error(errc::unknown_identifier, "constant " + name);
  }

  const ExprPtr* func_body(const std::string& name) const {
    for (const auto& [k, v] : funcs)
      if (k == name) return &v;
    return nullptr;
  }

  Point domain_center() const {
    Point c(coords.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (domain[i].lo + domain[i].hi);
    return c;
  }
};

// Canonical DSL rendering; parse(print(spec)) is structurally identical to spec.
inline std::string manifold_to_string(const ManifoldSpec& s) {
  std::string out = "manifold " + s.name + " {\n";
  out += "  dim " + std::to_string(s.dim) + ";\n";
  out += "  coords ";
  for (std::size_t i = 0; i < s.coords.size(); ++i) {
    if (i) out += ", ";
    out += s.coords[i];
  }
  out += ";\n";
  for (const auto& [k, v] : s.constants) out += "  const " + k + " = " + number_to_string(v) + ";\n";
  for (const auto& [k, e] : s.funcs) out += "  func " + k + " = " + expr_to_string(e, s.coords) + ";\n";
  out += "  metric {\n";
  for (int a = 0; a < s.dim; ++a)
    for (int b = a; b < s.dim; ++b)
      if (s.metric_at(a, b))
        out += "    g[" + s.coords[a] + "," + s.coords[b] + "] = " + expr_to_string(s.metric_at(a, b), s.coords) + ";\n";
  out += "  }\n";
  switch (s.projector.form) {
    case ProjectorSpec::Form::block: {
      out += "  projector block { leaf = ";
      for (std::size_t i = 0; i < s.projector.leaf.size(); ++i) {
        if (i) out += ", ";
        out += s.coords[static_cast<std::size_t>(s.projector.leaf[i])];
      }
      out += "; }\n";
      break;
    }
    case ProjectorSpec::Form::normals: {
      out += "  projector normals {\n";
      for (std::size_t i = 0; i < s.projector.normals.size(); ++i)
        for (int a = 0; a < s.dim; ++a)
          if (s.projector.normals[i][a])
            out += "    n" + std::to_string(i + 1) + "[" + s.coords[a] + "] = " +
                   expr_to_string(s.projector.normals[i][a], s.coords) + ";\n";
      out += "  }\n";
      break;
    }
    case ProjectorSpec::Form::explicit_p: {
      out += "  projector explicit {\n";
      for (int a = 0; a < s.dim; ++a)
        for (int b = a; b < s.dim; ++b)
          if (s.projector.entries[static_cast<std::size_t>(a) * s.dim + b])
            out += "    P[" + s.coords[a] + "," + s.coords[b] + "] = " +
                   expr_to_string(s.projector.entries[static_cast<std::size_t>(a) * s.dim + b], s.coords) + ";\n";
      out += "  }\n";
      break;
    }
  }
  out += "  domain {\n";
  for (std::size_t i = 0; i < s.coords.size(); ++i)
    out += "    " + s.coords[i] + " in [" + number_to_string(s.domain[i].lo) + ", " +
           number_to_string(s.domain[i].hi) + "];\n";
  out += "  }\n";
  for (const auto& v : s.vectors) {
    out += "  vector " + v.name + " {\n";
    for (int a = 0; a < s.dim; ++a)
      if (v.xi[static_cast<std::size_t>(a)])
        out += "    xi[" + s.coords[static_cast<std::size_t>(a)] + "] = " +
               expr_to_string(v.xi[static_cast<std::size_t>(a)], s.coords) + ";\n";
    if (v.phi) out += "    phi = " + expr_to_string(v.phi, s.coords) + ";\n";
    if (v.chi) out += "    chi = " + expr_to_string(v.chi, s.coords) + ";\n";
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

inline bool structurally_equal(const ManifoldSpec& x, const ManifoldSpec& y) {
  if (x.name != y.name || x.dim != y.dim || x.coords != y.coords) return false;
  if (x.constants != y.constants) return false;
  if (x.funcs.size() != y.funcs.size()) return false;
  for (std::size_t i = 0; i < x.funcs.size(); ++i)
    if (x.funcs[i].first != y.funcs[i].first || !structurally_equal(x.funcs[i].second, y.funcs[i].second))
      return false;
  for (std::size_t i = 0; i < x.metric.size(); ++i)
    if (!structurally_equal(x.metric[i], y.metric[i])) return false;
  if (x.projector.form != y.projector.form || x.projector.leaf != y.projector.leaf) return false;
  if (x.projector.normals.size() != y.projector.normals.size()) return false;
  for (std::size_t i = 0; i < x.projector.normals.size(); ++i)
    for (std::size_t a = 0; a < x.projector.normals[i].size(); ++a)
      if (!structurally_equal(x.projector.normals[i][a], y.projector.normals[i][a])) return false;
  if (x.projector.entries.size() != y.projector.entries.size()) return false;
  for (std::size_t i = 0; i < x.projector.entries.size(); ++i)
    if (!structurally_equal(x.projector.entries[i], y.projector.entries[i])) return false;
  if (x.domain.size() != y.domain.size()) return false;
  for (std::size_t i = 0; i < x.domain.size(); ++i)
    if (x.domain[i].lo != y.domain[i].lo || x.domain[i].hi != y.domain[i].hi) return false;
  if (x.vectors.size() != y.vectors.size()) return false;
  for (std::size_t i = 0; i < x.vectors.size(); ++i) {
    const auto& a = x.vectors[i];
    const auto& b = y.vectors[i];
    if (a.name != b.name) return false;
    for (std::size_t c = 0; c < a.xi.size(); ++c)
      if (!structurally_equal(a.xi[c], b.xi[c])) return false;
    if (!structurally_equal(a.phi, b.phi) || !structurally_equal(a.chi, b.chi)) return false;
  }
  return true;
}

}  // namespace bcv
