#pragma once

#include <memory>

#include "bcv/compile.hpp"
#include "bcv/grid.hpp"
#include "bcv/linalg.hpp"
#include "bcv/manifold.hpp"

namespace bcv {

// Order-3 jets of the two defining fields at one point: metric g_ab and the
// lower-index projector P_ab of the leaf distribution.
struct GeometryData {
  Grid<Jet, 2> g;
  Grid<Jet, 2> P;
};

class GeometrySource {
 public:
  virtual ~GeometrySource() = default;
  virtual int dim() const = 0;
  virtual const ManifoldSpec& spec() const = 0;
  virtual GeometryData at(const Point& x) const = 0;
};

// Fields exactly as written in the manifold description.
class SpecSource : public GeometrySource {
 public:
  explicit SpecSource(const ManifoldSpec& s) : spec_(&s) {}

  int dim() const override { return spec_->dim; }
  const ManifoldSpec& spec() const override { return *spec_; }

  GeometryData at(const Point& x) const override {
    const int n = spec_->dim;
    EvalContext ctx(*spec_, x);
    GeometryData d{Grid<Jet, 2>(n), Grid<Jet, 2>(n)};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) d.g(a, b) = ctx.eval(spec_->metric_at(a, b));

    switch (spec_->projector.form) {
      case ProjectorSpec::Form::block: {
        std::vector<bool> in_leaf(static_cast<std::size_t>(n), false);
        for (int c : spec_->projector.leaf) in_leaf[static_cast<std::size_t>(c)] = true;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            bool la = in_leaf[static_cast<std::size_t>(a)], lb = in_leaf[static_cast<std::size_t>(b)];
            if (la != lb) {
              for (int k = 0; k < jet_table(n).count; ++k)
                if (d.g(a, b).coeff(k) != 0.0)
                  throw error(errc::block_split_cross_terms,
                              "metric couples leaf coordinate '" + spec_->coords[la ? a : b] +
                                  "' to transverse coordinate '" + spec_->coords[la ? b : a] + "'");
            }
            d.P(a, b) = (la && lb) ? d.g(a, b) : Jet::constant(n, 0.0);
          }
        break;
      }
      case ProjectorSpec::Form::normals: {
        Grid<Jet, 2> ginv = invert_matrix(d.g, Jet::constant(n, 1.0), errc::singular_metric,
                                          "metric at sample point");
        const auto& nv = spec_->projector.normals;
        const int k = static_cast<int>(nv.size());
        std::vector<std::vector<Jet>> nj(static_cast<std::size_t>(k),
                                         std::vector<Jet>(static_cast<std::size_t>(n)));
        for (int i = 0; i < k; ++i)
          for (int a = 0; a < n; ++a)
            nj[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] =
                ctx.eval(nv[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]);
        // Gram matrix of the normals in the inverse metric
        Grid<Jet, 2> gram(k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            Jet s = Jet::constant(n, 0.0);
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                s = s + nj[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] * ginv(a, b) *
                            nj[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
            gram(i, j) = s;
          }
        Grid<Jet, 2> gup;
        try {
          gup = invert_matrix(gram, Jet::constant(n, 1.0), errc::degenerate_normals,
                              "normal covectors (Gram matrix)");
        } catch (const error& e) {
          if (e.code() == errc::division_by_zero)
            throw error(errc::degenerate_normals, "normal covectors have singular Gram matrix");
          throw;
        }
        // transverse part, then P = g − Π
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            Jet pi = Jet::constant(n, 0.0);
            for (int i = 0; i < k; ++i)
              for (int j = 0; j < k; ++j)
                pi = pi + nj[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] * gup(i, j) *
                              nj[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
            d.P(a, b) = d.g(a, b) - pi;
          }
        break;
      }
      case ProjectorSpec::Form::explicit_p: {
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) d.P(a, b) = ctx.eval(spec_->projector.entries[
              static_cast<std::size_t>(a) * n + b]);
        break;
      }
    }
    return d;
  }

 private:
  const ManifoldSpec* spec_;
};

// Bi-conformal rescaling: the leaf part of the metric is scaled by one
// positive factor and the transverse part by another.  The distribution is
// unchanged, so the lower-index projector just picks up the leaf factor.
class RescaledSource : public GeometrySource {
 public:
  RescaledSource(std::shared_ptr<const GeometrySource> base, ExprPtr leaf_factor,
                 ExprPtr transverse_factor)
      : base_(std::move(base)),
        leaf_factor_(std::move(leaf_factor)),
        transverse_factor_(std::move(transverse_factor)) {}

  int dim() const override { return base_->dim(); }
  const ManifoldSpec& spec() const override { return base_->spec(); }

  GeometryData at(const Point& x) const override {
    GeometryData d = base_->at(x);
    const int n = base_->dim();
    EvalContext ctx(base_->spec(), x);
    Jet z = ctx.eval(leaf_factor_);
    Jet w = ctx.eval(transverse_factor_);
    if (z.value() <= 0.0 || w.value() <= 0.0)
      throw error(errc::non_positive_rescale, "rescale factors must be positive on the domain");
    GeometryData r{Grid<Jet, 2>(n), Grid<Jet, 2>(n)};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Jet pi = d.g(a, b) - d.P(a, b);
        r.P(a, b) = z * d.P(a, b);
        r.g(a, b) = r.P(a, b) + w * pi;
      }
    return r;
  }

 private:
  std::shared_ptr<const GeometrySource> base_;
  ExprPtr leaf_factor_, transverse_factor_;
};

// Exchanges the roles of the leaf and transverse distributions (P ↦ g − P).
class SwappedSource : public GeometrySource {
 public:
  explicit SwappedSource(std::shared_ptr<const GeometrySource> base) : base_(std::move(base)) {}

  int dim() const override { return base_->dim(); }
  const ManifoldSpec& spec() const override { return base_->spec(); }

  GeometryData at(const Point& x) const override {
    GeometryData d = base_->at(x);
    const int n = base_->dim();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) d.P(a, b) = d.g(a, b) - d.P(a, b);
    return d;
  }

 private:
  std::shared_ptr<const GeometrySource> base_;
};

}  // namespace bcv
