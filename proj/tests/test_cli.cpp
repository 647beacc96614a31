// Command-line front end: flags, aliases, formats, exit codes.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcv/commands.hpp"
#include "bcv/corpus.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out, err;
};

CliResult cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"bcv"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = bcv::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// corpus DSL written out as a file, the way a user would invoke the tool
std::string corpus_file(const char* id) {
  const bcv::CorpusEntry* e = bcv::corpus_find(id);
  REQUIRE(e != nullptr);
  auto path = std::filesystem::temp_directory_path() / (std::string("bcv_cli_") + id + ".man");
  std::ofstream(path) << e->dsl;
  return path.string();
}

}  // namespace

TEST_CASE("check: default run, tensor aliases, canonical format", "[cli]") {
  std::string file = corpus_file("confsep5_curved_leaf");

  CliResult full = cli({"check", file, "--points", "6"});
  REQUIRE(full.code == 0);
  CHECK(full.out.find("manifold confsep5_curved_leaf") != std::string::npos);
  CHECK(full.out.find("gradP") != std::string::npos);
  CHECK(full.out.find("cotton0_projected") != std::string::npos);
  CHECK(full.out.find("T4") == std::string::npos);  // rank gate: q = 2, silently skipped

  // spec example spelling 'Tabc' resolves to the canonical id
  CliResult alias = cli({"check", file, "--tensor", "Tabc,M", "--points", "4", "--format",
                         "canonical"});
  REQUIRE(alias.code == 0);
  auto j = nlohmann::json::parse(alias.out);
  REQUIRE(j["tensors"].size() == 2);
  CHECK(j["tensors"][0]["id"] == "T_abc");
  CHECK(j["tensors"][1]["id"] == "M");
  CHECK(j["points"] == 4);

  CliResult mixed = cli({"check", file, "--tensor", "t_ABC", "--points", "4"});
  CHECK(mixed.code == 0);
  CHECK(mixed.out.find("T_abc") != std::string::npos);
}

TEST_CASE("check: seed spellings agree, bad inputs exit 2", "[cli]") {
  std::string file = corpus_file("shear4_beta0");

  CliResult hex = cli({"check", file, "--points", "4", "--seed", "0xB1C0", "--format",
                       "canonical"});
  CliResult dec = cli({"check", file, "--points", "4", "--seed", "45504", "--format",
                       "canonical"});
  REQUIRE(hex.code == 0);
  CHECK(hex.out == dec.out);
  CHECK(nlohmann::json::parse(hex.out)["seed"] == 45504);

  CHECK(cli({"check", file, "--seed", "zz"}).code == 2);
  CHECK(cli({"check", file, "--seed", "12x"}).code == 2);
  CHECK(cli({"check", file, "--points", "0"}).code == 2);
  CHECK(cli({"check", file, "--format", "yaml"}).code == 2);

  CliResult unknown = cli({"check", file, "--tensor", "bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown tensor 'bogus'") != std::string::npos);
  CHECK(unknown.err.find("gradP") != std::string::npos);  // lists the valid ids

  CliResult missing = cli({"check", "/no/such/file.man"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  auto broken = std::filesystem::temp_directory_path() / "bcv_cli_broken.man";
  std::ofstream(broken) << "manifold broken {\n  dim 3\n";
  CliResult parse = cli({"check", broken.string()});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("error:") != std::string::npos);
}

TEST_CASE("classify: canonical output carries tiers and bounds", "[cli]") {
  std::string file = corpus_file("confsep5_curved_leaf");
  CliResult r = cli({"classify", file, "--points", "4", "--format", "canonical"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["tiers"]["decomposable"] == "false");
  CHECK(j["tiers"]["conformally_separable"] == "true");
  CHECK(j["tiers"]["leaf_pi_conformally_flat"] == "indeterminate: rank excluded");
  CHECK(j["bounds"]["n"] == 5);

  CliResult txt = cli({"classify", file, "--points", "4"});
  REQUIRE(txt.code == 0);
  CHECK(txt.out.find("tiers:") != std::string::npos);
}

TEST_CASE("dump: full point required, coordinates validated", "[cli]") {
  std::string file = corpus_file("shear4_beta0");

  CliResult ok = cli({"dump", file, "--at", "x1=0.1,x2=-0.2,x3=0.15,x4=0.2"});
  REQUIRE(ok.code == 0);
  CHECK(ok.out.find("n=4 p=3") != std::string::npos);
  CHECK(ok.out.find("T_abc:") != std::string::npos);
  CHECK(ok.out.find("adapted_curvature:") != std::string::npos);

  CliResult partial = cli({"dump", file, "--at", "x1=0.1"});
  CHECK(partial.code == 2);
  CHECK(partial.err.find("missing coordinate") != std::string::npos);

  CliResult dup = cli({"dump", file, "--at", "x1=0.1,x1=0.2,x2=0,x3=0,x4=0"});
  CHECK(dup.code == 2);
  CHECK(dup.err.find("given twice") != std::string::npos);

  CHECK(cli({"dump", file, "--at", "zz=1,x1=0,x2=0,x3=0,x4=0"}).code == 2);
  CHECK(cli({"dump", file, "--at", "x1=abc,x2=0,x3=0,x4=0"}).code == 2);
  CHECK(cli({"dump", file}).code == 2);  // --at is required
}

TEST_CASE("corpus list and nbound", "[cli]") {
  CliResult list = cli({"corpus", "list"});
  REQUIRE(list.code == 0);
  std::size_t lines = 0;
  for (char c : list.out) lines += c == '\n';
  CHECK(lines == 12);
  CHECK(list.out.find("flat33_decomposable") != std::string::npos);

  CliResult nb = cli({"nbound", "--n", "6", "--p", "3"});
  REQUIRE(nb.code == 0);
  CHECK(nb.out.find("statement form: 12") != std::string::npos);
  CHECK(nb.out.find("proof form:     20") != std::string::npos);
  CHECK(nb.out.find("8 (= n + 2)") != std::string::npos);
  CHECK(nb.out.find("finite-dimensional family:       yes") != std::string::npos);

  CliResult infinite = cli({"nbound", "--n", "4", "--p", "2"});
  REQUIRE(infinite.code == 0);
  CHECK(infinite.out.find("finite-dimensional family:       no") != std::string::npos);

  CHECK(cli({"nbound", "--n", "5", "--p", "5"}).code == 2);   // p > n - 1
  CHECK(cli({"nbound", "--n", "1", "--p", "1"}).code == 2);   // n below range
  CHECK(cli({"corpus"}).code == 2);                           // subcommand required
  CHECK(cli({}).code == 2);
}

TEST_CASE("help exits 0", "[cli]") {
  CliResult help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("check") != std::string::npos);
  CHECK(help.out.find("classify") != std::string::npos);
  CHECK(help.out.find("nbound") != std::string::npos);
}
