#pragma once

#include <string>
#include <vector>

#include "bcv/metric_geometry.hpp"
#include "bcv/sampling.hpp"

namespace bcv {

constexpr double kValidationTol = 1e-9;
// separates jet noise (≲1e−10 on the bundled manifolds) from genuine
// obstructions (≳1e−3); also the default gate for candidate-field checks
constexpr double kDefaultThreshold = 1e-7;

struct ValidatedManifold {
  const ManifoldSpec* spec = nullptr;
  int rank = 0;  // leaf rank p
  double det = 0.0;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

// Structural checks at one interior probe point.  The projector axioms hold
// by construction for block and normals forms; for explicit ones they are the
// actual gate.
inline ValidatedManifold validate_spec(const ManifoldSpec& spec, const Point& probe) {
  const int n = spec.dim;
  if (static_cast<int>(probe.size()) != n)
    throw error(errc::dimension_mismatch, "probe point size does not match dim");
  for (int i = 0; i < n; ++i) {
    const Interval& iv = spec.domain[static_cast<std::size_t>(i)];
    if (!(iv.lo < iv.hi))
      throw error(errc::empty_domain, "coordinate '" + spec.coords[i] + "' has an empty interval");
    if (!(probe[static_cast<std::size_t>(i)] > iv.lo && probe[static_cast<std::size_t>(i)] < iv.hi))
      throw error(errc::domain_error,
                  "probe lies outside the open domain in coordinate '" + spec.coords[i] + "'");
  }
  for (int c = 0; c < n; ++c)
    if (!spec.metric_at(c, c))
      throw error(errc::singular_metric,
                  "diagonal metric component g[" + spec.coords[c] + "," + spec.coords[c] +
                      "] must be set explicitly");

  SpecSource src(spec);
  GeometryData d = src.at(probe);

  ValidatedManifold vm;
  vm.spec = &spec;
  vm.det = det_matrix(values(d.g), 1.0);
  if (std::abs(vm.det) < 1e-12)
    throw error(errc::singular_metric, "det(g) = " + std::to_string(vm.det) + " at probe point");

  ProjectorEval pe = projector_eval(d.g, d.P);
  if (pe.sym_defect > kValidationTol)
    throw error(errc::not_a_projector,
                "P_ab is not symmetric: residual " + std::to_string(pe.sym_defect));
  if (pe.idem_defect > kValidationTol)
    throw error(errc::not_a_projector,
                "P^a_p P^p_b != P^a_b: residual " + std::to_string(pe.idem_defect));
  if (pe.compat_defect > kValidationTol)
    throw error(errc::not_a_projector,
                "P g^{-1} P != P: residual " + std::to_string(pe.compat_defect));
  if (pe.trace_defect > kValidationTol)
    throw error(errc::non_integer_rank,
                "trace of P^a_b is not near an integer: defect " + std::to_string(pe.trace_defect));
  vm.rank = pe.rank;
  if (vm.rank < 1)
    throw error(errc::not_a_projector, "leaf distribution has rank 0");
  if (vm.rank > n - 1)
    throw error(errc::not_a_projector, "complement has rank 0");

  const int p = vm.rank, q = n - p;
  if (p == 1 || p == 2)
    vm.warnings.push_back("rank-" + std::to_string(p) +
                          " projector: the algebra of candidate fields may be infinite dimensional");
  if (q == 1 || q == 2)
    vm.warnings.push_back("rank-" + std::to_string(q) +
                          " complement: the algebra of candidate fields may be infinite dimensional");
  if (p == 3) vm.notes.push_back("rank-3 leaf: the Cotton-type flatness criterion applies");
  if (q == 3) vm.notes.push_back("rank-3 complement: the Cotton-type flatness criterion applies");
  return vm;
}

inline ValidatedManifold validate_spec(const ManifoldSpec& spec) {
  return validate_spec(spec, spec.domain_center());
}

}  // namespace bcv
