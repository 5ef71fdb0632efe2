#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "torsionlab/cli.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/io.hpp"

using namespace torsionlab;
namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "torsionlab");
  std::vector<char *> argv;
  for (auto &a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

fs::path scratch_dir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("torsionlab_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("run config round-trips through JSON") {
  RunConfig c;
  c.experiment = "suite";
  c.spec = geometry::AnnulusSpec{1.0, 0.3, 0.2};
  c.f1 = std::vector<double>{-1, 0, 1};
  c.eps_list = std::vector<double>{0.2, 0.1, 0.05};
  c.t_list = std::vector<double>{0.04, 0.08};
  c.h = 0.1 / 3.0;
  c.family = "tilt";
  c.seed = 18446744073709551615ull;
  c.n = 20;
  c.n_angles = 129;
  c.fibers = 40;
  c.n_terms = 400;
  c.output_dir = "out";
  c.jobs = 3;
  c.verbosity = 1;
  const auto back = config_from_json(nlohmann::json::parse(to_json(c).dump()));
  CHECK(back == c);
  CHECK(*back.h == *c.h);
  CHECK(*back.seed == *c.seed);
  CHECK(config_from_json(to_json(RunConfig{})) == RunConfig{});
}

TEST_CASE("config parsing errors") {
  CHECK_THROWS_AS(config_from_json({{"experiment", "suite"}, {"colour", "red"}}), Error);
  CHECK_THROWS_AS(config_from_json({{"h", "small"}}), Error);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), Error);
  CHECK_THROWS_AS(config_from_json({{"spec", {{"type", "ellipse"}, {"a_semi", -1.0}, {"b_semi", 1.0}}}}), DomainError);
}

TEST_CASE("config hash ignores scheduling fields") {
  RunConfig a;
  a.experiment = "suite";
  a.n = 5;
  RunConfig b = a;
  b.jobs = 7;
  b.output_dir = "elsewhere";
  b.verbosity = 2;
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.n = 6;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("exit codes") {
  experiments::Report r;
  r.claims = {{"ok", true}};
  CHECK(cli::exit_code(r) == 0);
  r.claims.push_back({"broken", false});
  CHECK(cli::exit_code(r) == 2);
  CHECK(run_cli({}) == 1);
  CHECK(run_cli({"frobnicate"}) == 1);
  CHECK(run_cli({"suite", "--bogus"}) == 1);
  CHECK(run_cli({"solve"}) == 1);  // no spec
  CHECK(run_cli({"suite", "--n", "0"}) == 1);
}

TEST_CASE("validate writes a byte-identical report on repeat") {
  const auto dir = scratch_dir("validate");
  REQUIRE(run_cli({"validate", "-o", dir.string()}) == 0);
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(dir)) files.push_back(e.path());
  REQUIRE(files.size() == 1);
  const auto first = slurp(files[0]);
  REQUIRE(run_cli({"validate", "-o", dir.string(), "--jobs", "2"}) == 0);
  CHECK(slurp(files[0]) == first);
  const auto j = nlohmann::json::parse(first);
  CHECK(j["experiment"] == "validate");
  CHECK(j["all_claims_hold"] == true);
  CHECK(files[0].filename().string().rfind("validate_" + j["config_hash"].get<std::string>(), 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("solve and failpoint from a spec file") {
  const auto dir = scratch_dir("solve");
  fs::create_directories(dir);
  const auto spec = dir / "spec.json";
  std::ofstream(spec) << R"({"type": "triangle", "A": [0, 0], "B": [4, 0], "C": [1, 2]})";
  CHECK(run_cli({"solve", "--spec", spec.string(), "--h", "0.1", "-o", (dir / "out").string()}) == 0);
  CHECK(run_cli({"failpoint", "--spec", spec.string(), "--h", "0.1", "-o", (dir / "out").string()}) == 0);
  int json = 0, csv = 0;
  for (const auto &e : fs::directory_iterator(dir / "out")) {
    json += e.path().extension() == ".json";
    csv += e.path().extension() == ".csv";
  }
  CHECK(json == 2);
  CHECK(csv == 4);  // solve: profile, solution, flux; failpoint: profile

  // a config file for another experiment is rejected
  const auto cfg = dir / "config.json";
  std::ofstream(cfg) << R"({"experiment": "annulus"})";
  CHECK(run_cli({"suite", "--config", cfg.string(), "-o", (dir / "out").string()}) == 1);
  std::ofstream(cfg) << "{not json";
  CHECK(run_cli({"validate", "--config", cfg.string()}) == 1);
  fs::remove_all(dir);
}

TEST_CASE("config file drives an experiment") {
  const auto dir = scratch_dir("config");
  fs::create_directories(dir);
  const auto cfg = dir / "config.json";
  std::ofstream(cfg) << R"({"experiment": "suite", "n": 2, "h": 0.05, "seed": 3})";
  CHECK(run_cli({"suite", "--config", cfg.string(), "-o", dir.string()}) == 0);
  RunConfig expected;
  expected.experiment = "suite";
  expected.n = 2;
  expected.h = 0.05;
  expected.seed = 3;
  CHECK(fs::exists(dir / ("suite_" + config_hash(expected) + ".json")));
  fs::remove_all(dir);
}
