#pragma once

// Canonical (stable-key-order JSON) and human-readable renderings of the
// analysis results, plus the single-point component dump.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcv/analysis.hpp"
#include "bcv/frame.hpp"
#include "bcv/source.hpp"

namespace bcv {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline const char* verdict_name(bool vanishes) { return vanishes ? "vanishes" : "nonzero"; }

// criterion behind each tier flag, used by the narrative renderings
inline const char* tier_criterion(const char* key) {
  const std::string k = key;
  if (k == "decomposable") return "metric gradient of the projector vanishes";
  if (k == "conformally_separable") return "trace-corrected projector gradient vanishes";
  if (k == "conformally_reducible") return "conformally separable and the scale one-form is closed";
  if (k == "bi_conformally_flat") return "conformally separable with both leaf families conformally flat";
  if (k == "leaf_p_conformally_flat")
    return "leaf flatness obstruction vanishes (adapted Cotton criterion at rank 3)";
  return "transverse flatness obstruction vanishes (adapted Cotton criterion at rank 3)";
}

inline ordered_json tensors_json(const std::vector<ObstructionReport>& tensors) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : tensors) {
    ordered_json e;
    e["id"] = t.id;
    e["max_scaled_residual"] = t.max_scaled_residual;
    e["verdict"] = verdict_name(t.vanishes);
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace detail

inline std::string canonical_check_report(const std::string& manifold, uint64_t seed, int points,
                                          double threshold,
                                          const std::vector<ObstructionReport>& tensors) {
  ordered_json j;
  j["manifold"] = manifold;
  j["seed"] = seed;
  j["points"] = points;
  j["threshold"] = threshold;
  j["tensors"] = detail::tensors_json(tensors);
  return j.dump(2) + "\n";
}

inline std::string canonical_classify_report(const ClassificationReport& r) {
  ordered_json j;
  j["manifold"] = r.manifold;
  j["seed"] = r.seed;
  j["points"] = r.points;
  j["threshold"] = r.threshold;
  j["tensors"] = detail::tensors_json(r.tensors);
  ordered_json tiers;
  tiers["decomposable"] = tier_name(r.decomposable);
  tiers["conformally_separable"] = tier_name(r.conformally_separable);
  tiers["conformally_reducible"] = tier_name(r.conformally_reducible);
  tiers["bi_conformally_flat"] = tier_name(r.bi_conformally_flat);
  tiers["leaf_p_conformally_flat"] = tier_name(r.leaf_p_conformally_flat);
  tiers["leaf_pi_conformally_flat"] = tier_name(r.leaf_pi_conformally_flat);
  j["tiers"] = std::move(tiers);
  ordered_json b;
  b["n"] = r.bound.n;
  b["p"] = r.bound.p;
  b["n_statement"] = r.bound.n_statement;
  b["n_proof"] = r.bound.n_proof;
  b["finite"] = r.bound.finite;
  b["note"] = r.bound.note;
  j["bounds"] = std::move(b);
  return j.dump(2) + "\n";
}

inline std::string text_check_report(const std::string& manifold, uint64_t seed, int points,
                                     double threshold,
                                     const std::vector<ObstructionReport>& tensors) {
  std::string out = "manifold " + manifold + "\n";
  char line[160];
  std::snprintf(line, sizeof line, "seed 0x%llX  points %d  threshold %g\n",
                static_cast<unsigned long long>(seed), points, threshold);
  out += line;
  out += "tensor              max scaled residual  verdict\n";
  for (const auto& t : tensors) {
    std::snprintf(line, sizeof line, "%-18s  %-19.6e  %s\n", t.id.c_str(), t.max_scaled_residual,
                  detail::verdict_name(t.vanishes));
    out += line;
  }
  return out;
}

inline std::string text_classify_report(const ClassificationReport& r) {
  std::string out = text_check_report(r.manifold, r.seed, r.points, r.threshold, r.tensors);
  out += "tiers:\n";
  auto row = [&](const char* key, Tier t) {
    char line[200];
    std::snprintf(line, sizeof line, "  %-26s %-28s (%s)\n", key, tier_name(t),
                  detail::tier_criterion(key));
    out += line;
  };
  row("decomposable", r.decomposable);
  row("conformally_separable", r.conformally_separable);
  row("conformally_reducible", r.conformally_reducible);
  row("bi_conformally_flat", r.bi_conformally_flat);
  row("leaf_p_conformally_flat", r.leaf_p_conformally_flat);
  row("leaf_pi_conformally_flat", r.leaf_pi_conformally_flat);
  char line[256];
  std::snprintf(line, sizeof line, "bounds: N_statement=%ld N_proof=%ld finite=%s\n",
                r.bound.n_statement, r.bound.n_proof, r.bound.finite ? "yes" : "no");
  out += line;
  out += "  " + r.bound.note + "\n";
  return out;
}

namespace detail {

// one tensor's components, zeros suppressed but counted
template <int R>
void dump_grid(std::string& out, const char* id, const Grid<Jet, R>& g) {
  const Grid<double, R> v = values(g);
  const int n = v.dim();
  char line[160];
  std::snprintf(line, sizeof line, "%s: max|.| = %.6e\n", id, max_abs(v));
  out += line;
  int suppressed = 0;
  std::size_t total = v.raw().size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (std::abs(v.raw()[flat]) <= 1e-14) {
      ++suppressed;
      continue;
    }
    int idx[R];
    std::size_t rem = flat;
    for (int k = R - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    out += "  " + std::string(id) + "[";
    for (int k = 0; k < R; ++k) out += (k ? "," : "") + std::to_string(idx[k]);
    std::snprintf(line, sizeof line, "] = %.15g\n", v.raw()[flat]);
    out += line;
  }
  if (suppressed) {
    std::snprintf(line, sizeof line, "  (%d components below 1e-14 suppressed)\n", suppressed);
    out += line;
  }
}

}  // namespace detail

// every adapted-frame tensor at one point; experimental quantities are listed
// with magnitudes only and never contribute to any verdict
inline std::string text_dump(const ManifoldSpec& spec, const Point& x) {
  SpecSource src(spec);
  Frame f = make_frame(src, x);
  std::string out = "manifold " + spec.name + " at (";
  char num[48];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(num, sizeof num, "%s%.15g", i ? ", " : "", x[i]);
    out += num;
  }
  out += ")\n";
  std::snprintf(num, sizeof num, "n=%d p=%d\n", f.n, f.p);
  out += num;

  detail::dump_grid(out, "g", f.g);
  detail::dump_grid(out, "P", f.P);
  detail::dump_grid(out, "Pi", f.Pi);
  detail::dump_grid(out, "gradP", f.covdP);
  detail::dump_grid(out, "M", f.gradPsym);
  detail::dump_grid(out, "E", f.volGradP);
  detail::dump_grid(out, "W", f.volGradPi);
  detail::dump_grid(out, "T_abc", f.twist);
  detail::dump_grid(out, "u", f.scaleForm);
  detail::dump_grid(out, "du", f.scaleCurl);
  detail::dump_grid(out, "conn_shift", f.connShift);
  detail::dump_grid(out, "adapted_conn", f.biconn);
  detail::dump_grid(out, "adapted_gradP_mixed", f.barCovdPmixed);
  detail::dump_grid(out, "lambda", f.lambda);
  detail::dump_grid(out, "lambda_dual", f.lambdaBar);
  detail::dump_grid(out, "adapted_curvature", f.biconnRiem);
  if (f.schoutenP) detail::dump_grid(out, "schouten_p", *f.schoutenP);
  if (f.schoutenPi) detail::dump_grid(out, "schouten_pi", *f.schoutenPi);
  if (f.flatObstr) detail::dump_grid(out, "T4", *f.flatObstr);
  if (f.leafConfP) detail::dump_grid(out, "Cpar", *f.leafConfP);
  if (f.leafConfPi) detail::dump_grid(out, "Cperp", *f.leafConfPi);
  if (f.cottonP) detail::dump_grid(out, "cotton0", *f.cottonP);
  if (f.cottonPProj) detail::dump_grid(out, "cotton0_projected", *f.cottonPProj);
  if (f.cottonPi) detail::dump_grid(out, "cotton0_dual", *f.cottonPi);
  if (f.cottonPiProj) detail::dump_grid(out, "cotton0_dual_projected", *f.cottonPiProj);
  if (f.schoutenSkewBalance)
    detail::dump_grid(out, "schouten_skew_balance", *f.schoutenSkewBalance);
  if (f.schoutenSkewBalancePi)
    detail::dump_grid(out, "schouten_skew_balance_dual", *f.schoutenSkewBalancePi);
  return out;
}

}  // namespace bcv
