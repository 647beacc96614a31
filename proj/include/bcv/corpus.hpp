#pragma once

// Built-in reference manifolds with frozen expectations. corpus_run re-derives
// everything (tiers, tensor verdicts, vector field witnesses and transport
// identities, rescale invariance) and reports the first mismatch.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bcv/analysis.hpp"
#include "bcv/bcvf.hpp"
#include "bcv/parse.hpp"
#include "bcv/rescale.hpp"
#include "bcv/sampling.hpp"

namespace bcv {

struct CorpusEntry {
  std::string id;
  std::string note;
  std::string dsl;
  Tier decomposable = Tier::no;
  Tier conformally_separable = Tier::no;
  Tier conformally_reducible = Tier::no;
  Tier bi_conformally_flat = Tier::no;
  Tier leaf_p_conformally_flat = Tier::no;
  Tier leaf_pi_conformally_flat = Tier::no;
  std::vector<std::string> nonzero;  // ids expected to report "nonzero"
  std::vector<std::pair<std::string, std::string>> rescale_pairs;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;

    v.push_back({
        "flat33_decomposable",
        "flat 3+3 product carrying the full 10+10 block-conformal generator set",
        R"(manifold flat33_decomposable {
  dim 6;
  coords x1, x2, x3, y1, y2, y3;
  metric {
    g[x1,x1]=1; g[x2,x2]=1; g[x3,x3]=1;
    g[y1,y1]=1; g[y2,y2]=1; g[y3,y3]=1;
  }
  projector block { leaf = x1, x2, x3; }
  domain {
    x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1];
    y1 in [-1,1]; y2 in [-1,1]; y3 in [-1,1];
  }
  vector t1 { xi[x1]=1; phi=0; chi=0; }
  vector t2 { xi[x2]=1; phi=0; chi=0; }
  vector t3 { xi[x3]=1; phi=0; chi=0; }
  vector r12 { xi[x1]=x2; xi[x2]=-x1; phi=0; chi=0; }
  vector r13 { xi[x1]=x3; xi[x3]=-x1; phi=0; chi=0; }
  vector r23 { xi[x2]=x3; xi[x3]=-x2; phi=0; chi=0; }
  vector d1 { xi[x1]=x1; xi[x2]=x2; xi[x3]=x3; phi=2; chi=0; }
  vector c1 { xi[x1]=2*x1*x1 - (x1^2+x2^2+x3^2); xi[x2]=2*x2*x1; xi[x3]=2*x3*x1; phi=4*x1; chi=0; }
  vector c2 { xi[x1]=2*x1*x2; xi[x2]=2*x2*x2 - (x1^2+x2^2+x3^2); xi[x3]=2*x3*x2; phi=4*x2; chi=0; }
  vector c3 { xi[x1]=2*x1*x3; xi[x2]=2*x2*x3; xi[x3]=2*x3*x3 - (x1^2+x2^2+x3^2); phi=4*x3; chi=0; }
  vector s1 { xi[y1]=1; phi=0; chi=0; }
  vector s2 { xi[y2]=1; phi=0; chi=0; }
  vector s3 { xi[y3]=1; phi=0; chi=0; }
  vector q12 { xi[y1]=y2; xi[y2]=-y1; phi=0; chi=0; }
  vector q13 { xi[y1]=y3; xi[y3]=-y1; phi=0; chi=0; }
  vector q23 { xi[y2]=y3; xi[y3]=-y2; phi=0; chi=0; }
  vector d2 { xi[y1]=y1; xi[y2]=y2; xi[y3]=y3; phi=0; chi=2; }
  vector e1 { xi[y1]=2*y1*y1 - (y1^2+y2^2+y3^2); xi[y2]=2*y2*y1; xi[y3]=2*y3*y1; phi=0; chi=4*y1; }
  vector e2 { xi[y1]=2*y1*y2; xi[y2]=2*y2*y2 - (y1^2+y2^2+y3^2); xi[y3]=2*y3*y2; phi=0; chi=4*y2; }
  vector e3 { xi[y1]=2*y1*y3; xi[y2]=2*y2*y3; xi[y3]=2*y3*y3 - (y1^2+y2^2+y3^2); phi=0; chi=4*y3; }
}
)",
        Tier::yes, Tier::yes, Tier::yes, Tier::yes, Tier::yes, Tier::yes,
        {},
        {{"exp(x1 + y1)", "1 + x2^2"}, {"1 + x1^2/2 + y2^2", "exp(x3/3 - y3/2)"}},
    });

    v.push_back({
        "biconf_flat33",
        "flat blocks under independent exponential rescales; the flat generators survive with shifted gauges",
        R"(manifold biconf_flat33 {
  dim 6;
  coords x1, x2, x3, y1, y2, y3;
  func xi1 = exp(x1/5 + y1/5);
  func xi2 = exp(x2/7 + y2/3);
  metric {
    g[x1,x1]=xi1; g[x2,x2]=xi1; g[x3,x3]=xi1;
    g[y1,y1]=xi2; g[y2,y2]=xi2; g[y3,y3]=xi2;
  }
  projector block { leaf = x1, x2, x3; }
  domain {
    x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1];
    y1 in [-1,1]; y2 in [-1,1]; y3 in [-1,1];
  }
  vector t1 { xi[x1]=1; phi=1/5; chi=0; }
  vector s2 { xi[y2]=1; phi=0; chi=1/3; }
  vector d1 { xi[x1]=x1; xi[x2]=x2; xi[x3]=x3; phi=2 + x1/5; chi=x2/7; }
  vector d2 { xi[y1]=y1; xi[y2]=y2; xi[y3]=y3; phi=y1/5; chi=2 + y2/3; }
  vector r23 { xi[x2]=x3; xi[x3]=-x2; phi=0; chi=x3/7; }
  vector q13 { xi[y1]=y3; xi[y3]=-y1; phi=y3/5; chi=0; }
  vector c1 { xi[x1]=2*x1*x1 - (x1^2+x2^2+x3^2); xi[x2]=2*x2*x1; xi[x3]=2*x3*x1;
              phi=4*x1 + (2*x1*x1 - (x1^2+x2^2+x3^2))/5; chi=2*x2*x1/7; }
  vector e2 { xi[y1]=2*y1*y2; xi[y2]=2*y2*y2 - (y1^2+y2^2+y3^2); xi[y3]=2*y3*y2;
              phi=2*y1*y2/5; chi=4*y2 + (2*y2*y2 - (y1^2+y2^2+y3^2))/3; }
}
)",
        Tier::no, Tier::yes, Tier::yes, Tier::yes, Tier::yes, Tier::yes,
        {"gradP", "M"},
        {{"exp(x1/6 - y3/4)", "1 + (x2 + y1)^2/8"}},
    });

    v.push_back({
        "confsep5_curved_leaf",
        "conformally separable 3+2 with a curved non-conformally-flat leaf and a non-closed scale form",
        R"(manifold confsep5_curved_leaf {
  dim 5;
  coords x1, x2, x3, y1, y2;
  func xi1 = exp(x1/5 + y1/5) * (1 + y2^2/10);
  func xi2 = 1 + x2^2/10 + y2^2/20;
  metric {
    g[x1,x1] = xi1;
    g[x2,x2] = xi1 * (1 + x1^2);
    g[x3,x3] = xi1 * (1 + x2^2/2 + x1/4);
    g[x1,x2] = xi1 * (x3/5);
    g[y1,y1] = xi2 * (1 + y2^2/4);
    g[y2,y2] = xi2 * (1 + y1/3);
    g[y1,y2] = xi2 * (y1*y2/8);
  }
  projector block { leaf = x1, x2, x3; }
  domain {
    x1 in [0.3, 1.1]; x2 in [-0.5, 0.5]; x3 in [0.2, 0.9];
    y1 in [0.4, 1.2]; y2 in [-0.6, 0.4];
  }
}
)",
        Tier::no, Tier::yes, Tier::no, Tier::no, Tier::no, Tier::rank_excluded,
        {"gradP", "M", "du", "cotton0", "cotton0_projected"},
        {},
    });

    v.push_back({
        "confsep6_mixed_leaves",
        "conformally separable 3+3: flat leaf family against a curved non-conformally-flat one",
        R"(manifold confsep6_mixed_leaves {
  dim 6;
  coords x1, x2, x3, y1, y2, y3;
  func xi1 = 1 + x1^2/7 + y1^2/6;
  func xi2 = exp(x2/6 + y2/8);
  metric {
    g[x1,x1] = xi1; g[x2,x2] = xi1; g[x3,x3] = xi1;
    g[y1,y1] = xi2 * (1 + y2^2/4);
    g[y2,y2] = xi2 * exp(y1/3 + y3/3);
    g[y3,y3] = xi2 * (1 + y1^2/5);
  }
  projector block { leaf = x1, x2, x3; }
  domain {
    x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1];
    y1 in [0.2,1]; y2 in [-0.8,0.8]; y3 in [0.2,1];
  }
}
)",
        Tier::no, Tier::yes, Tier::no, Tier::no, Tier::yes, Tier::no,
        {"gradP", "M", "du"},
        {},
    });

    v.push_back({
        "confsep7_curved4leaf",
        "7-dimensional conformally separable with a non-conformally-flat 4-leaf; the 4-tensor obstruction is the live criterion",
        R"(manifold confsep7_curved4leaf {
  dim 7;
  coords x1, x2, x3, x4, y1, y2, y3;
  func f = 1 - 4/(5*(2 + x2^2 + x3^2));
  func xi1 = exp(x1/6 + y1/6);
  func xi2 = 1 + x2^2/9;
  metric {
    g[x1,x1] = xi1 * f;
    g[x2,x2] = xi1 / f;
    g[x3,x3] = xi1 * (1 + x2^2);
    g[x4,x4] = xi1 * (1 + x3^2/3);
    g[y1,y1] = xi2;
    g[y2,y2] = xi2;
    g[y3,y3] = xi2;
  }
  projector block { leaf = x1, x2, x3, x4; }
  domain {
    x1 in [0.2,1]; x2 in [0.3,1.1]; x3 in [0.2,0.9]; x4 in [-1,1];
    y1 in [-1,1]; y2 in [-0.7,0.7]; y3 in [0.1,0.9];
  }
}
)",
        Tier::no, Tier::yes, Tier::yes, Tier::no, Tier::no, Tier::yes,
        {"gradP", "M", "T4", "Cpar", "cotton0", "cotton0_projected"},
        {{"exp(x1/5 + y1/7)", "1 + x4^2/6 + y2^2/5"}},
    });

    v.push_back({
        "confreducible5",
        "single shared conformal factor over a flat 3+2 product, so the scale form is closed",
        R"(manifold confreducible5 {
  dim 5;
  coords x1, x2, x3, y1, y2;
  func omega = exp((x1 + y1)/4);
  metric {
    g[x1,x1] = omega; g[x2,x2] = omega; g[x3,x3] = omega;
    g[y1,y1] = omega;
    g[y2,y2] = omega * (1 + y1^2/5);
  }
  projector block { leaf = x1, x2, x3; }
  domain {
    x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1];
    y1 in [-1,1]; y2 in [-1,1];
  }
  vector t2 { xi[x2]=1; phi=0; chi=0; }
  vector t3 { xi[x3]=1; phi=0; chi=0; }
  vector r23 { xi[x2]=x3; xi[x3]=-x2; phi=0; chi=0; }
}
)",
        Tier::no, Tier::yes, Tier::yes, Tier::rank_excluded, Tier::yes, Tier::rank_excluded,
        {"gradP", "M"},
        {},
    });

    v.push_back({
        "warped_product4_generic",
        "stationary axially symmetric family at generic parameters; carries two Killing fields",
        R"(manifold warped_product4_generic {
  dim 4;
  coords t, r, theta, phi;
  func Psi = r^2;
  func Phi = r;
  metric {
    g[t,t] = Psi^2 * sin(theta)^2 - 1;
    g[t,phi] = Psi^2 * sin(theta)^2;
    g[phi,phi] = Phi^2 * sin(theta)^2;
    g[r,r] = 1;
    g[theta,theta] = r^2;
  }
  projector normals { n1[t] = 1; }
  domain { t in [-1,1]; r in [1.4,1.9]; theta in [0.9,1.5]; phi in [-1,1]; }
  vector kt { xi[t]=1; phi=0; chi=0; }
  vector kphi { xi[phi]=1; phi=0; chi=0; }
}
)",
        Tier::no, Tier::no, Tier::no, Tier::no, Tier::yes, Tier::rank_excluded,
        {"gradP", "M", "T_abc", "cotton0"},
        {},
    });

    v.push_back({
        "warped_product4_special",
        "same family at the parameter lock that makes it conformally separable",
        R"(manifold warped_product4_special {
  dim 4;
  coords t, r, theta, phi;
  const k = 1.3;
  func B = 1 + 3*r/10;
  metric {
    g[t,t] = 0;
    g[t,phi] = k^2 * sin(theta)^4;
    g[phi,phi] = k^2 * sin(theta)^4;
    g[r,r] = B^2;
    g[theta,theta] = B^2 * r^2;
  }
  projector normals { n1[t] = 1; }
  domain { t in [-1,1]; r in [1.4,1.9]; theta in [0.9,1.5]; phi in [-1,1]; }
  vector kt { xi[t]=1; phi=0; chi=0; }
  vector kphi { xi[phi]=1; phi=0; chi=0; }
}
)",
        Tier::no, Tier::yes, Tier::yes, Tier::no, Tier::no, Tier::rank_excluded,
        {"gradP", "M", "cotton0", "cotton0_projected"},
        {},
    });

    v.push_back({
        "shear4_generic",
        "general 4-metric foliated by conformally flat 3-slices with nonzero shear terms",
        R"(manifold shear4_generic {
  dim 4;
  coords x1, x2, x3, x4;
  func Phi = 3/2 + x1^2/8 + x4/10;
  func Psi = 2 + x2^2/7 + x4^2/9;
  metric {
    g[x1,x1] = Phi; g[x2,x2] = Phi; g[x3,x3] = Phi;
    g[x1,x4] = x2*x4/7;
    g[x2,x4] = -x3/9;
    g[x3,x4] = x1*x2/10;
    g[x4,x4] = Psi;
  }
  projector normals { n1[x4] = 1; }
  domain { x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1]; x4 in [-1,1]; }
}
)",
        Tier::no, Tier::no, Tier::no, Tier::no, Tier::yes, Tier::rank_excluded,
        {"gradP", "M", "T_abc", "du", "cotton0"},
        {},
    });

    v.push_back({
        "shear4_beta0",
        "shear terms switched off: conformally separable with flat slices",
        R"(manifold shear4_beta0 {
  dim 4;
  coords x1, x2, x3, x4;
  func Phi = 3/2 + x1^2/8 + x4/10;
  func Psi = 2 + x2^2/7 + x4^2/9;
  metric {
    g[x1,x1] = Phi; g[x2,x2] = Phi; g[x3,x3] = Phi;
    g[x4,x4] = Psi;
  }
  projector normals { n1[x4] = 1; }
  domain { x1 in [-1,1]; x2 in [-1,1]; x3 in [-1,1]; x4 in [-1,1]; }
}
)",
        Tier::no, Tier::yes, Tier::no, Tier::rank_excluded, Tier::yes, Tier::rank_excluded,
        {"gradP", "M", "du"},
        {},
    });

    v.push_back({
        "perturbed5_nonseparable",
        "block-diagonal metric with non-conformal transverse coupling; every split obstruction is live",
        R"(manifold perturbed5_nonseparable {
  dim 5;
  coords x1, x2, x3, y1, y2;
  metric {
    g[x1,x1] = 1 + x1^2/4 + y2/5;
    g[x2,x2] = 1 + y1/3;
    g[x3,x3] = 1;
    g[x2,x3] = x1*y1/7;
    g[y1,y1] = 1 + x3^2/6;
    g[y2,y2] = 1 + x1*y1/9;
    g[y1,y2] = x3/9;
  }
  projector block { leaf = x1, x2, x3; }
  domain {
    x1 in [-0.8, 0.8]; x2 in [-0.8, 0.8]; x3 in [-0.8, 0.8];
    y1 in [-0.8, 0.8]; y2 in [-0.8, 0.8];
  }
}
)",
        Tier::no, Tier::no, Tier::no, Tier::no, Tier::no, Tier::rank_excluded,
        {"gradP", "M", "T_abc", "du", "cotton0", "cotton0_projected"},
        {},
    });

    v.push_back({
        "flat4_rank2",
        "rank-2 projector on flat 2+2: the rank-gated criteria must bow out rather than guess",
        R"(manifold flat4_rank2 {
  dim 4;
  coords x1, x2, y1, y2;
  metric { g[x1,x1]=1; g[x2,x2]=1; g[y1,y1]=1; g[y2,y2]=1; }
  projector block { leaf = x1, x2; }
  domain { x1 in [-1,1]; x2 in [-1,1]; y1 in [-1,1]; y2 in [-1,1]; }
  vector t1 { xi[x1]=1; phi=0; chi=0; }
  vector r12 { xi[x1]=x2; xi[x2]=-x1; phi=0; chi=0; }
  vector d1 { xi[x1]=x1; xi[x2]=x2; phi=2; chi=0; }
  vector dy { xi[y1]=y1; xi[y2]=y2; phi=0; chi=2; }
  vector hy { xi[x1]=x1^2 - x2^2; xi[x2]=2*x1*x2; phi=4*x1; chi=0; }
}
)",
        Tier::yes, Tier::yes, Tier::yes, Tier::rank_excluded, Tier::rank_excluded,
        Tier::rank_excluded,
        {},
        {},
    });

    return v;
  }();
  return entries;
}

inline const CorpusEntry* corpus_find(const std::string& id) {
  for (const auto& e : corpus())
    if (e.id == id) return &e;
  return nullptr;
}

inline std::string corpus_list() {
  std::string out;
  for (const auto& e : corpus()) out += e.id + "  -  " + e.note + "\n";
  return out;
}

struct CorpusRunResult {
  bool ok = true;
  std::string diff;  // first mismatch, empty when ok
};

namespace detail {
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}
}  // namespace detail

inline CorpusRunResult corpus_run_entries(const std::vector<CorpusEntry>& entries,
                                          std::ostream* progress = nullptr) {
  constexpr double kSuiteTol = 1e-8;
  // deterministic processing and output order, independent of table layout
  std::vector<const CorpusEntry*> order;
  for (const auto& e : entries) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const CorpusEntry* a, const CorpusEntry* b) { return a->id < b->id; });
  for (const CorpusEntry* ep : order) {
    const CorpusEntry& e = *ep;
    ManifoldSpec spec = parse_manifold(e.dsl);
    ClassificationReport rep = classify(spec, make_samples(spec));

    auto fail = [&](const std::string& what, const std::string& expected, const std::string& got) {
      return CorpusRunResult{false, e.id + ": " + what + "\n  expected: " + expected +
                                        "\n  got:      " + got};
    };
    auto tier = [&](const char* key, Tier want, Tier got) -> std::optional<CorpusRunResult> {
      if (want == got) return std::nullopt;
      return fail(std::string("tier '") + key + "'", tier_name(want), tier_name(got));
    };
    if (auto d = tier("decomposable", e.decomposable, rep.decomposable)) return *d;
    if (auto d = tier("conformally_separable", e.conformally_separable, rep.conformally_separable))
      return *d;
    if (auto d = tier("conformally_reducible", e.conformally_reducible, rep.conformally_reducible))
      return *d;
    if (auto d = tier("bi_conformally_flat", e.bi_conformally_flat, rep.bi_conformally_flat))
      return *d;
    if (auto d = tier("leaf_p_conformally_flat", e.leaf_p_conformally_flat,
                      rep.leaf_p_conformally_flat))
      return *d;
    if (auto d = tier("leaf_pi_conformally_flat", e.leaf_pi_conformally_flat,
                      rep.leaf_pi_conformally_flat))
      return *d;

    for (const auto& t : rep.tensors) {
      const bool want_nonzero =
          std::find(e.nonzero.begin(), e.nonzero.end(), t.id) != e.nonzero.end();
      if (want_nonzero == t.vanishes)
        return fail("tensor '" + t.id + "' verdict", want_nonzero ? "nonzero" : "vanishes",
                    std::string(t.vanishes ? "vanishes" : "nonzero") + " (max scaled residual " +
                        detail::sci(t.max_scaled_residual) + ")");
    }
    for (const auto& id : e.nonzero) {
      bool present = false;
      for (const auto& t : rep.tensors) present = present || t.id == id;
      if (!present)
        return fail("tensor '" + id + "'", "present in report", "absent (rank excluded?)");
    }

    auto pts = sample_points(spec, 6, kDefaultSeed);
    for (const auto& vec : spec.vectors) {
      for (const Point& x : pts) {
        BCVFWitness w = bcvf_check(spec, vec.name, x);
        if (w.max_residual() >= kDefaultThreshold)
          return fail("vector '" + vec.name + "' witness residual", "< 1e-7",
                      detail::sci(w.max_residual()));
        double decl = std::max(w.phi_declared_delta.value_or(0.0), w.chi_declared_delta.value_or(0.0));
        if (decl >= kDefaultThreshold)
          return fail("vector '" + vec.name + "' declared gauge delta", "< 1e-7",
                      detail::sci(decl));
        for (const auto& ir : bcvf_identity_suite(spec, vec.name, x))
          if (ir.residual >= kSuiteTol)
            return fail("vector '" + vec.name + "' identity '" + ir.id + "'", "< 1e-8",
                        detail::sci(ir.residual));
      }
    }

    for (const auto& [z, xexpr] : e.rescale_pairs) {
      auto rpts = sample_points(spec, 6, kDefaultSeed);
      double dev = rescale_invariance_check(spec, z, xexpr, rpts);
      if (dev >= kSuiteTol)
        return fail("rescale invariance for (" + z + ", " + xexpr + ")", "< 1e-8",
                    detail::sci(dev));
    }

    if (progress) *progress << e.id << ": ok\n";
  }
  return {};
}

inline CorpusRunResult corpus_run(std::ostream* progress = nullptr) {
  return corpus_run_entries(corpus(), progress);
}

}  // namespace bcv
