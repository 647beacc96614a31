#pragma once

// CLI front end: check / classify / dump / corpus / nbound.
// Exit codes: 0 evaluation succeeded (regardless of verdicts),
//             1 corpus expectation mismatch,
//             2 input errors (bad file, parse/validation failure, bad flags).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcv/analysis.hpp"
#include "bcv/corpus.hpp"
#include "bcv/parse.hpp"
#include "bcv/report.hpp"
#include "bcv/sampling.hpp"
#include "bcv/validate.hpp"

namespace bcv {
namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Tensor selectors tolerate cosmetic spelling (Tabc == T_abc, case-insensitive).
inline std::string canon_key(std::string s) {
  std::string out;
  for (char c : s)
    if (c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::string resolve_tensor_id(const std::string& given) {
  for (const auto& id : obstruction_ids())
    if (id == given || canon_key(id) == canon_key(given)) return id;
  std::string valid;
  for (const auto& id : obstruction_ids()) valid += (valid.empty() ? "" : ", ") + id;
  throw error(errc::bad_argument, "unknown tensor '" + given + "' (valid: " + valid + ")");
}

inline uint64_t parse_seed(const std::string& s) {
  try {
    size_t used = 0;
    uint64_t v = std::stoull(s, &used, 0);  // base 0: accepts 123, 0x7B, 0173
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw error(errc::bad_argument, "seed '" + s + "' is not an unsigned integer");
  }
}

inline Point parse_point(const ManifoldSpec& spec, const std::string& at) {
  Point x(spec.coords.size(), 0.0);
  std::vector<bool> seen(spec.coords.size(), false);
  std::stringstream ss(at);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw error(errc::bad_argument, "--at entry '" + item + "' is not name=value");
    std::string name = item.substr(0, eq);
    int idx = -1;
    for (size_t i = 0; i < spec.coords.size(); ++i)
      if (spec.coords[i] == name) idx = static_cast<int>(i);
    if (idx < 0) throw error(errc::bad_argument, "unknown coordinate '" + name + "' in --at");
    if (seen[idx]) throw error(errc::bad_argument, "coordinate '" + name + "' given twice in --at");
    try {
      size_t used = 0;
      x[idx] = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw error(errc::bad_argument, "bad value in --at entry '" + item + "'");
    }
    seen[idx] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw error(errc::bad_argument, "--at is missing coordinate '" + spec.coords[i] + "'");
  return x;
}

struct CliConfig {
  std::string file;
  std::vector<std::string> tensors;
  int points = kDefaultPoints;
  std::string seed_text = "0xB1C0";
  double threshold = kDefaultThreshold;
  std::string format = "text";
  std::string at;
  int nb_n = 0, nb_p = 0;
};

inline int cmd_check(const CliConfig& cfg, std::ostream& out) {
  ManifoldSpec spec = parse_manifold(slurp(cfg.file));
  validate_spec(spec);
  uint64_t seed = parse_seed(cfg.seed_text);
  auto pts = sample_points(spec, cfg.points, seed);
  SpecSource src(spec);

  std::vector<ObstructionReport> reports;
  if (cfg.tensors.empty()) {
    reports = obstruction_battery(src, pts, cfg.threshold, nullptr, /*skip_unavailable=*/true);
  } else {
    std::vector<std::string> ids;
    for (const auto& t : cfg.tensors) {
      std::string id = resolve_tensor_id(t);
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    reports = obstruction_battery(src, pts, cfg.threshold, &ids);
  }
  if (cfg.format == "canonical")
    out << canonical_check_report(spec.name, seed, cfg.points, cfg.threshold, reports);
  else
    out << text_check_report(spec.name, seed, cfg.points, cfg.threshold, reports);
  return 0;
}

inline int cmd_classify(const CliConfig& cfg, std::ostream& out) {
  ManifoldSpec spec = parse_manifold(slurp(cfg.file));
  uint64_t seed = parse_seed(cfg.seed_text);
  ClassificationReport rep = classify(spec, make_samples(spec, cfg.points, seed), cfg.threshold);
  out << (cfg.format == "canonical" ? canonical_classify_report(rep) : text_classify_report(rep));
  return 0;
}

inline int cmd_dump(const CliConfig& cfg, std::ostream& out) {
  ManifoldSpec spec = parse_manifold(slurp(cfg.file));
  validate_spec(spec);
  out << text_dump(spec, parse_point(spec, cfg.at));
  return 0;
}

inline int cmd_nbound(const CliConfig& cfg, std::ostream& out) {
  DimensionBound b = dimension_bound(cfg.nb_n, cfg.nb_p);
  out << "n = " << b.n << ", p = " << b.p << " (transverse rank " << b.n - b.p << ")\n"
      << "dimension bound, statement form: " << b.n_statement << "\n"
      << "dimension bound, proof form:     " << b.n_proof << "\n"
      << "gap between the two forms:       " << b.n_proof - b.n_statement << " (= n + 2)\n"
      << "finite-dimensional family:       " << (b.finite ? "yes" : "no") << "\n";
  if (!b.note.empty()) out << "note: " << b.note << "\n";
  return 0;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  detail::CliConfig cfg;
  CLI::App app{"numerical verification of bi-conformal metric splittings"};
  app.require_subcommand(1);

  auto add_run_opts = [&](CLI::App* c) {
    c->add_option("--points", cfg.points, "sample point count")->check(CLI::PositiveNumber);
    c->add_option("--seed", cfg.seed_text, "sampling seed (decimal or 0x-hex)");
    c->add_option("--tol", cfg.threshold, "vanishing threshold on scaled residuals")
        ->check(CLI::PositiveNumber);
    c->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "canonical"}));
  };

  CLI::App* check = app.add_subcommand("check", "evaluate obstruction tensors on a manifold");
  check->add_option("file", cfg.file, "manifold DSL file")->required();
  check->add_option("--tensor", cfg.tensors, "comma-separated tensor ids (default: all available)")
      ->delimiter(',');
  add_run_opts(check);

  CLI::App* classify = app.add_subcommand("classify", "place a manifold in the separability lattice");
  classify->add_option("file", cfg.file, "manifold DSL file")->required();
  add_run_opts(classify);

  CLI::App* dump = app.add_subcommand("dump", "print all tensor components at one point");
  dump->add_option("file", cfg.file, "manifold DSL file")->required();
  dump->add_option("--at", cfg.at, "point as coord=value,coord=value,...")->required();

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "built-in reference manifolds");
  corpus_cmd->require_subcommand(1);
  CLI::App* corpus_list_cmd = corpus_cmd->add_subcommand("list", "list entries");
  CLI::App* corpus_run_cmd = corpus_cmd->add_subcommand("run", "re-verify every entry");

  CLI::App* nbound = app.add_subcommand("nbound", "dimension bound for the vector-field family");
  nbound->add_option("--n", cfg.nb_n, "manifold dimension")->required()->check(CLI::Range(2, 64));
  nbound->add_option("--p", cfg.nb_p, "leaf projector rank")->required()->check(CLI::Range(1, 63));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check)) return detail::cmd_check(cfg, out);
    if (app.got_subcommand(classify)) return detail::cmd_classify(cfg, out);
    if (app.got_subcommand(dump)) return detail::cmd_dump(cfg, out);
    if (app.got_subcommand(nbound)) return detail::cmd_nbound(cfg, out);
    if (app.got_subcommand(corpus_cmd)) {
      if (corpus_cmd->got_subcommand(corpus_list_cmd)) {
        out << corpus_list();
        return 0;
      }
      if (corpus_cmd->got_subcommand(corpus_run_cmd)) {
        CorpusRunResult r = corpus_run(&out);
        if (!r.ok) {
          err << "corpus mismatch\n" << r.diff << "\n";
          return 1;
        }
        out << "corpus: all " << corpus().size() << " entries ok\n";
        return 0;
      }
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable given require_subcommand
}

}  // namespace bcv
