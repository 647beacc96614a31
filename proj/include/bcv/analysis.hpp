#pragma once

// Obstruction battery, separability-tier classification, symmetry-dimension
// bounds, and numerical independence rank of candidate vector fields.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcv/bcvf.hpp"
#include "bcv/compile.hpp"
#include "bcv/errors.hpp"
#include "bcv/frame.hpp"
#include "bcv/sampling.hpp"
#include "bcv/source.hpp"
#include "bcv/validate.hpp"

namespace bcv {

// upper bounds on the dimension of the bi-conformal symmetry algebra; two
// published counting arguments give different values, and we report both
// rather than pick a side (their gap is always exactly n + 2)
struct DimensionBound {
  int n = 0, p = 0;
  long n_statement = 0;  // p(p+1)/2 + q(q+1)/2
  long n_proof = 0;      // (p+1)(p+2)/2 + (q+1)(q+2)/2
  bool finite = true;    // false iff p or n−p lies in {1, 2}
  std::string note;
};

inline DimensionBound dimension_bound(int n, int p) {
  if (n < 2 || p < 1 || p > n - 1)
    throw error(errc::bad_argument,
                "projector rank must satisfy 1 <= p <= n-1, got n=" + std::to_string(n) +
                    " p=" + std::to_string(p));
  const int q = n - p;
  DimensionBound b;
  b.n = n;
  b.p = p;
  b.n_statement = static_cast<long>(p) * (p + 1) / 2 + static_cast<long>(q) * (q + 1) / 2;
  b.n_proof = static_cast<long>(p + 1) * (p + 2) / 2 + static_cast<long>(q + 1) * (q + 2) / 2;
  b.finite = p > 2 && q > 2;
  b.note = "open question: the stated bound is " + std::to_string(b.n_statement) +
           " but the counting argument behind it yields " + std::to_string(b.n_proof) +
           " (gap n+2 = " + std::to_string(n + 2) + "); both are reported unresolved";
  return b;
}

struct ObstructionReport {
  std::string id;
  std::vector<double> point_residuals;  // scaled, one per sample point
  double max_scaled_residual = 0.0;
  double scale = 1.0;
  double threshold = kDefaultThreshold;
  bool vanishes = false;
};

namespace detail {

inline const std::vector<std::string>& obstruction_ids() {
  static const std::vector<std::string> ids = {"gradP", "M",       "T_abc",           "du",  "T4",
                                               "Cpar",  "Cperp",   "cotton0",         "cotton0_projected"};
  return ids;
}

inline bool obstruction_available(const Frame& f, const std::string& id) {
  if (id == "gradP" || id == "M" || id == "T_abc" || id == "du") return true;
  if (id == "T4") return f.flatObstr.has_value();
  if (id == "Cpar") return f.leafConfP.has_value();
  if (id == "Cperp") return f.leafConfPi.has_value();
  if (id == "cotton0") return f.cottonP.has_value();
  if (id == "cotton0_projected") return f.cottonPProj.has_value();
  throw error(errc::bad_argument, "unknown tensor id '" + id + "'");
}

inline double obstruction_raw(const Frame& f, const std::string& id) {
  auto need = [&](const auto& opt) -> double {
    if (!opt)
      throw error(errc::rank_excluded, "tensor '" + id + "' is undefined for projector ranks p=" +
                                           std::to_string(f.p) + ", q=" + std::to_string(f.n - f.p));
    return max_abs(values(*opt));
  };
  if (id == "gradP") return max_abs(values(f.covdP));
  if (id == "M") return max_abs(values(f.gradPsym));
  if (id == "T_abc") return max_abs(values(f.twist));
  if (id == "du") return max_abs(values(f.scaleCurl));
  if (id == "T4") return need(f.flatObstr);
  if (id == "Cpar") return need(f.leafConfP);
  if (id == "Cperp") return need(f.leafConfPi);
  if (id == "cotton0") return need(f.cottonP);
  if (id == "cotton0_projected") return need(f.cottonPProj);
  throw error(errc::bad_argument, "unknown tensor id '" + id + "'");
}

}  // namespace detail

// canonical tensor-id order, as rendered in reports
inline const std::vector<std::string>& obstruction_ids() { return detail::obstruction_ids(); }

// evaluates the requested obstruction tensors at every sample point with one
// shared scale (1 + the largest metric or adapted-curvature component seen)
inline std::vector<ObstructionReport> obstruction_battery(const GeometrySource& src,
                                                          const std::vector<Point>& samples,
                                                          double threshold = kDefaultThreshold,
                                                          const std::vector<std::string>* only = nullptr,
                                                          bool skip_unavailable = false) {
  const std::vector<std::string>& wanted = only ? *only : detail::obstruction_ids();
  std::vector<ObstructionReport> out;
  std::vector<std::vector<double>> raw(wanted.size());
  double scale = 1.0;
  bool first = true;
  std::vector<bool> keep(wanted.size(), true);
  for (const Point& x : samples) {
    Frame f = make_frame(src, x);
    scale = std::max(scale, 1.0 + std::max(max_abs(values(f.g)), max_abs(values(f.biconnRiem))));
    for (std::size_t i = 0; i < wanted.size(); ++i) {
      if (first && skip_unavailable && !detail::obstruction_available(f, wanted[i])) keep[i] = false;
      if (keep[i]) raw[i].push_back(detail::obstruction_raw(f, wanted[i]));
    }
    first = false;
  }
  for (std::size_t i = 0; i < wanted.size(); ++i) {
    if (!keep[i]) continue;
    ObstructionReport r;
    r.id = wanted[i];
    r.scale = scale;
    r.threshold = threshold;
    for (double v : raw[i]) {
      r.point_residuals.push_back(v / scale);
      r.max_scaled_residual = std::max(r.max_scaled_residual, v / scale);
    }
    r.vanishes = r.max_scaled_residual < threshold;
    out.push_back(std::move(r));
  }
  return out;
}

inline ObstructionReport obstruction_report(const ManifoldSpec& spec, const std::string& tensor_id,
                                            const std::vector<Point>& samples,
                                            double threshold = kDefaultThreshold) {
  SpecSource src(spec);
  std::vector<std::string> one{tensor_id};
  return obstruction_battery(src, samples, threshold, &one).front();
}

enum class Tier { yes, no, rank_excluded };

inline const char* tier_name(Tier t) {
  switch (t) {
    case Tier::yes: return "true";
    case Tier::no: return "false";
    default: return "indeterminate: rank excluded";
  }
}

struct ClassificationReport {
  std::string manifold;
  uint64_t seed = kDefaultSeed;
  int points = 0;
  double threshold = kDefaultThreshold;
  int n = 0, p = 0;
  std::vector<ObstructionReport> tensors;  // every id defined at this (p, q)
  Tier decomposable = Tier::no;
  Tier conformally_separable = Tier::no;
  Tier conformally_reducible = Tier::no;
  Tier bi_conformally_flat = Tier::no;
  Tier leaf_p_conformally_flat = Tier::no;
  Tier leaf_pi_conformally_flat = Tier::no;
  DimensionBound bound;
};

inline ClassificationReport classify(const ManifoldSpec& spec, const SampleSet& samples,
                                     double threshold = kDefaultThreshold) {
  validate_spec(spec);
  SpecSource src(spec);
  ClassificationReport rep;
  rep.manifold = spec.name;
  rep.seed = samples.seed;
  rep.points = static_cast<int>(samples.points.size());
  rep.threshold = threshold;
  rep.n = spec.dim;

  // one frame up front pins the projector ranks; q-side cotton is kept out of
  // the public tensor list but drives the dual leaf flag at rank 3
  Frame f0 = make_frame(src, samples.points.front());
  rep.p = f0.p;
  const int p = f0.p, q = rep.n - f0.p;
  rep.tensors = obstruction_battery(src, samples.points, threshold, nullptr, true);

  auto vanish = [&](const std::string& id) -> std::optional<bool> {
    for (const auto& t : rep.tensors)
      if (t.id == id) return t.vanishes;
    return std::nullopt;
  };
  auto as_tier = [](std::optional<bool> v) {
    return v ? (*v ? Tier::yes : Tier::no) : Tier::rank_excluded;
  };

  rep.decomposable = as_tier(vanish("gradP"));
  rep.conformally_separable = as_tier(vanish("T_abc"));
  rep.conformally_reducible =
      rep.conformally_separable == Tier::yes ? as_tier(vanish("du")) : rep.conformally_separable;

  // leaf conformal flatness: rank >= 4 uses the Weyl-type projection, rank 3
  // swaps in the adapted Cotton criterion, ranks 1 and 2 admit no criterion
  rep.leaf_p_conformally_flat =
      p >= 4 ? as_tier(vanish("Cpar")) : (p == 3 ? as_tier(vanish("cotton0_projected")) : Tier::rank_excluded);
  if (q >= 4) {
    rep.leaf_pi_conformally_flat = as_tier(vanish("Cperp"));
  } else if (q == 3) {
    double worst = 0, scale = 1;
    for (const Point& x : samples.points) {
      Frame f = make_frame(src, x);
      scale = std::max(scale, 1.0 + std::max(max_abs(values(f.g)), max_abs(values(f.biconnRiem))));
      worst = std::max(worst, max_abs(values(*f.cottonPiProj)));
    }
    rep.leaf_pi_conformally_flat = worst / scale < threshold ? Tier::yes : Tier::no;
  } else {
    rep.leaf_pi_conformally_flat = Tier::rank_excluded;
  }

  auto tier_and = [](std::initializer_list<Tier> ts) {
    bool excluded = false;
    for (Tier t : ts) {
      if (t == Tier::no) return Tier::no;
      if (t == Tier::rank_excluded) excluded = true;
    }
    return excluded ? Tier::rank_excluded : Tier::yes;
  };
  rep.bi_conformally_flat = tier_and(
      {rep.conformally_separable, rep.leaf_p_conformally_flat, rep.leaf_pi_conformally_flat});

  rep.bound = dimension_bound(rep.n, rep.p);
  return rep;
}

// numerical rank of the span of the named fields: each row stacks a field's
// components over all sample points, rank counted by singular values
inline int independence_rank(const ManifoldSpec& spec, const std::vector<std::string>& names,
                             const std::vector<Point>& samples,
                             double threshold = kDefaultThreshold) {
  std::string offenders;
  for (const std::string& name : names)
    for (const Point& x : samples) {
      BCVFWitness w = bcvf_check(spec, name, x);
      if (w.max_residual() >= threshold) {
        if (!offenders.empty()) offenders += ", ";
        offenders += name;
        break;
      }
    }
  if (!offenders.empty())
    throw error(errc::not_a_bcvf, "fields failing the witness check: " + offenders);

  const int n = spec.dim;
  Eigen::MatrixXd m(names.size(), samples.size() * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < names.size(); ++i) {
    const VectorSpec& v = detail::find_vector(spec, names[i]);
    for (std::size_t k = 0; k < samples.size(); ++k)
      for (int a = 0; a < n; ++a)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k * n + a)) =
            v.xi[static_cast<std::size_t>(a)] ? eval_scalar(spec, v.xi[static_cast<std::size_t>(a)], samples[k])
                                              : 0.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++rank;
  return rank;
}

}  // namespace bcv
