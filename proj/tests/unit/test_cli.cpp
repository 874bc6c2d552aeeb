#include "doctest.h"

#include "cli.hpp"

#include <stripbie/effective.hpp>
#include <stripbie/scene_io.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace stripbie;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("stripbie_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stripbie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("field run writes the grid and lambda") {
  TempDir dir("field");
  const auto out = dir.path.string();
  REQUIRE(run_cli({"field", "--example", "ex1-case1", "--param", "r=0.1", "--n", "256", "--grid", "21,11",
                   "--out", out}) == 0);
  const auto summary = read_json(dir.path / "summary.json");
  CHECK(std::abs(summary["lambda_y"].get<double>() - 0.8533491) < 1e-6);
  CHECK(summary["m"] == 5);
  CHECK(summary["ell"] == 0);
  CHECK(summary["delta"].size() == 5);
  CHECK(summary["status"] == "ok");
  CHECK(summary["residual"].get<double>() < 1e-10);

  const auto rows = read_csv(dir.path / "grid.csv");
  REQUIRE(rows.size() == 1 + 21 * 11);
  CHECK(rows[0] == std::vector<std::string>{"x", "y", "mask", "T", "qx", "qy"});
  std::size_t masked = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][2] == "1") {
      ++masked;
      CHECK(rows[i][3] == "nan");
    } else {
      const double T = std::stod(rows[i][3]);
      CHECK(T >= -1e-9);
      CHECK(T <= 1.0 + 1e-9);
    }
  }
  CHECK(masked > 0);
  CHECK(summary["grid"]["masked"] == masked);
}

TEST_CASE("example run for the conducting ellipses") {
  TempDir dir("ex4");
  REQUIRE(run_cli({"example", "--example", "ex4", "--param", "a=0.019", "--param", "b=0.19", "--n", "256",
                   "--out", dir.path.string()}) == 0);
  const auto rows = read_csv(dir.path / "lambda.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "param");
  CHECK(std::stod(rows[1][0]) == 0.19);
  CHECK(std::abs(std::stod(rows[1][3]) - 1.2804116) < 1e-6);
  CHECK(rows[1][4] == "nan");
  CHECK(std::abs(std::stod(rows[1][2]) - slit_density(5, 0.19)) < 1e-15);
  CHECK(read_json(dir.path / "summary.json")["param"] == "b");
}

TEST_CASE("vanishing inclusions leave the strip unchanged") {
  TempDir dir("tiny");
  REQUIRE(run_cli({"sweep", "--example", "ex1-case1", "--sweep", "r=1e-5:1e-5:1", "--n", "64", "--out",
                   dir.path.string()}) == 0);
  const auto rows = read_csv(dir.path / "sweep.csv");
  REQUIRE(rows.size() == 2);
  CHECK(std::abs(std::stod(rows[1][3]) - 1.0) < 1e-6);
}

TEST_CASE("a single sweep point reproduces a direct solve") {
  cli::RunConfig config;
  config.command = cli::Command::Sweep;
  config.example = ExampleId::Ex1CaseII;
  config.n = 128;
  config.sweep = cli::parse_sweep("r=0.13:0.13:1");
  config.validate();
  const auto rows = cli::run_sweep(config);
  REQUIRE(rows.size() == 1);

  const auto scene = paper_example(ExampleId::Ex1CaseII, {.r = 0.13});
  const auto solution = solve(scene, config.discretization(), config.solver);
  CHECK(rows[0].lambda_y == lambda_y(solution).lambda_y);
  CHECK(rows[0].residual == solution.result.residual);
  CHECK(rows[0].c == scene_concentration(scene));
  CHECK(rows[0].lambda_e == cma_insulators(rows[0].c));
}

TEST_CASE("insulator sweep decreases with the radius") {
  TempDir dir("mono");
  REQUIRE(run_cli({"sweep", "--example", "ex1-case1", "--sweep", "r=0.02:0.18:5", "--n", "128", "--workers",
                   "2", "--out", dir.path.string()}) == 0);
  const auto rows = read_csv(dir.path / "sweep.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"param", "c", "phi", "lambda_y", "lambda_e", "n", "residual",
                                            "status"});
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][3]) < std::stod(rows[i - 1][3]));
    CHECK(std::stod(rows[i][4]) < std::stod(rows[i - 1][4]));
    CHECK(rows[i][7] == "ok");
  }
  const auto summary = read_json(dir.path / "summary.json");
  CHECK(summary["points"] == 5);
  CHECK(summary["failed"] == 0);
}

TEST_CASE("sweeps are independent of the worker count") {
  TempDir a("w1"), b("w3");
  const std::vector<std::string> common{"sweep", "--example", "ex1-case1", "--sweep", "r=0.05:0.15:4", "--n", "64"};
  auto one = common, three = common;
  one.insert(one.end(), {"--workers", "1", "--out", a.path.string()});
  three.insert(three.end(), {"--workers", "3", "--out", b.path.string()});
  REQUIRE(run_cli(one) == 0);
  REQUIRE(run_cli(three) == 0);
  CHECK(slurp(a.path / "sweep.csv") == slurp(b.path / "sweep.csv"));
}

TEST_CASE("dense conductor lattice departs from the dilute formula") {
  TempDir dir("ex5");
  REQUIRE(run_cli({"sweep", "--example", "ex5", "--sweep", "c=0.02:0.5:2", "--n", "64", "--out",
                   dir.path.string()}) == 0);
  const auto rows = read_csv(dir.path / "sweep.csv");
  REQUIRE(rows.size() == 3);
  auto rel = [&](std::size_t i) {
    const double lam = std::stod(rows[i][3]), lame = std::stod(rows[i][4]);
    CHECK(lam > 1.0);
    return std::abs(lam - lame) / lame;
  };
  CHECK(std::abs(std::stod(rows[1][1]) - 0.02) < 1e-12);
  CHECK(rel(1) < 1e-3);
  CHECK(rel(2) > 1e-2);
  CHECK(rel(2) > 10.0 * rel(1));
}

TEST_CASE("random experiments") {
  SUBCASE("balanced mixture has a unit dilute estimate") {
    TempDir dir("mixed");
    REQUIRE(run_cli({"random-experiment", "--param", "m=40", "--reps", "2", "--seed", "5", "--out",
                     dir.path.string()}) == 0);
    const auto rows = read_csv(dir.path / "random.csv");
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(std::stod(rows[i][3]) == 1.0);
      CHECK(rows[i][4] == rows[i][5]);
      CHECK(std::abs(std::stod(rows[i][2]) - 1.0) < 2e-3);
      CHECK(rows[i][8] == "ok");
    }
    CHECK(rows[1][1] == "5");
    CHECK(rows[2][1] == "6");
    const auto summary = read_json(dir.path / "summary.json");
    CHECK(summary["completed"] == 2);
    CHECK(summary["lambda_e"]["mean"] == 1.0);
  }
  SUBCASE("conductors raise the conductivity") {
    TempDir dir("cond");
    REQUIRE(run_cli({"random-experiment", "--mix", "conductors", "--param", "m=30", "--reps", "2", "--out",
                     dir.path.string()}) == 0);
    const auto rows = read_csv(dir.path / "random.csv");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(std::stod(rows[i][2]) > 1.0);
      CHECK(std::stod(rows[i][3]) > 1.0);
      CHECK(std::stod(rows[i][5]) == 0.0);
    }
  }
  SUBCASE("data files are reproducible") {
    TempDir a("rep1"), b("rep2");
    REQUIRE(run_cli({"random-experiment", "--mix", "ellipses", "--param", "m=20", "--reps", "3", "--seed", "11",
                     "--out", a.path.string()}) == 0);
    REQUIRE(run_cli({"random-experiment", "--mix", "ellipses", "--param", "m=20", "--reps", "3", "--seed", "11",
                     "--workers", "3", "--out", b.path.string()}) == 0);
    CHECK(slurp(a.path / "random.csv") == slurp(b.path / "random.csv"));
  }
  SUBCASE("packing failure marks the row and the exit code") {
    TempDir dir("pack");
    CHECK(run_cli({"random-experiment", "--mix", "insulators", "--param", "m=400", "--param", "r=0.03", "--out",
                   dir.path.string()}) == cli::kInvalidInput);
    const auto rows = read_csv(dir.path / "random.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][8].rfind("packing-failed", 0) == 0);
    CHECK(rows[1][2] == "nan");
  }
}

TEST_CASE("exit codes") {
  TempDir dir("codes");
  const auto out = dir.path.string();
  CHECK(run_cli({"solve", "--example", "nope", "--out", out}) == cli::kInvalidInput);
  CHECK(run_cli({"solve", "--example", "ex1-case1", "--param", "r=0.3", "--out", out}) == cli::kInvalidInput);
  CHECK(run_cli({"solve", "--param", "r=0.1", "--out", out}) == cli::kInvalidInput);
  CHECK(run_cli({"solve", "--example", "ex1-case1", "--param", "r=0.1", "--n", "100", "--out", out}) ==
        cli::kInvalidInput);
  CHECK(run_cli({"solve", "--example", "ex1-case1", "--param", "q=0.1", "--out", out}) == cli::kInvalidInput);
  CHECK(run_cli({"bogus"}) == cli::kInvalidInput);

  std::ofstream(dir.path / "bad.json") << "{\"inclusions\": [";
  CHECK(run_cli({"solve", "--scene", (dir.path / "bad.json").string(), "--out", out}) == cli::kInvalidInput);

  SUBCASE("non-convergence still writes a summary") {
    CHECK(run_cli({"solve", "--example", "ex2", "--param", "r=0.09", "--n", "64", "--tolerance", "1e-15",
                   "--max-iterations", "2", "--out", out}) == cli::kNotConverged);
    const auto summary = read_json(dir.path / "summary.json");
    CHECK(summary["status"] == "not-converged");
    CHECK(summary["lambda_y"].is_null());
    CHECK(summary["iterations"] == 2);
  }
  SUBCASE("scene files") {
    const auto scene = paper_example(ExampleId::Ex1CaseI, {.r = 0.1});
    save_scene(scene, dir.path / "scene.json");
    CHECK(run_cli({"solve", "--scene", (dir.path / "scene.json").string(), "--n", "256", "--out", out}) == 0);
    const auto summary = read_json(dir.path / "summary.json");
    CHECK(summary["scene"] == "scene.json");
    CHECK(std::abs(summary["lambda_y"].get<double>() - 0.8533491) < 1e-6);
  }
}

TEST_CASE("configuration parsing") {
  SUBCASE("sweep specs") {
    const auto s = cli::parse_sweep("r=0.01:0.19:10");
    CHECK(s.param == "r");
    const auto v = s.values();
    REQUIRE(v.size() == 10);
    CHECK(v.front() == 0.01);
    CHECK(v.back() == 0.19);
    CHECK_THROWS_AS(cli::parse_sweep("r=0.01:0.19"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_sweep("z=0:1:3"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_sweep("r=0:1:0"), cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_sweep("r=0:x:3"), cli::ConfigError);
  }
  SUBCASE("json documents") {
    const auto c = cli::config_from_json(R"({"command": "sweep", "example": "ex3", "params": {"r": 0.05},
      "n": 512, "outer_n": 2048, "grid": [11, 7], "seed": 9, "sweep": "r=0.01:0.09:3", "workers": 2,
      "tolerance": 1e-12})");
    CHECK(c.command == cli::Command::Sweep);
    CHECK(c.example == ExampleId::Ex3);
    CHECK(c.params.at("r") == 0.05);
    CHECK(c.n == 512);
    CHECK(c.discretization().outer_n == 2048);
    REQUIRE(c.grid);
    CHECK(c.grid->nx == 11);
    CHECK(c.grid->ny == 7);
    CHECK(c.seed == 9);
    CHECK(c.sweep->count == 3);
    CHECK(c.workers == 2);
    CHECK(c.solver.tolerance == 1e-12);
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(cli::config_from_json("{"), cli::ConfigError);
    CHECK_THROWS_AS(cli::config_from_json(R"({"n": "many"})"), cli::ConfigError);
    CHECK_THROWS_AS(cli::config_from_json(R"({"example": "ex7"})"), cli::ConfigError);
  }
  SUBCASE("flags override the config file") {
    TempDir dir("cfg");
    std::ofstream(dir.path / "run.json") << R"({"example": "ex1-case1", "params": {"r": 0.05}, "n": 512})";
    const std::string file = (dir.path / "run.json").string();
    std::vector<const char*> argv{"stripbie", "solve", "--config", file.c_str(), "--n", "128", "--param", "r=0.1"};
    std::ostringstream log;
    const auto c = cli::parse_args(static_cast<int>(argv.size()), argv.data(), log);
    REQUIRE(c);
    CHECK(c->n == 128);
    CHECK(c->params.at("r") == 0.1);
    CHECK(c->example == ExampleId::Ex1CaseI);
  }
  SUBCASE("defaults") {
    cli::RunConfig c;
    c.example = ExampleId::Ex1CaseI;
    CHECK(c.discretization().n == 2048);
    CHECK(c.discretization().outer_n == 2048);
    c.n = 64;
    CHECK(c.discretization().outer_n == 1024);
    c.command = cli::Command::RandomExperiment;
    c.example.reset();
    c.random = cli::RandomSpec{};
    c.n = 0;
    CHECK(c.discretization().n == 64);
    CHECK_NOTHROW(c.validate());
    c.sweep = cli::parse_sweep("r=0:1:2");
    CHECK_THROWS_AS(c.validate(), cli::ConfigError);
  }
  SUBCASE("help") {
    std::vector<const char*> argv{"stripbie", "--help"};
    std::ostringstream out;
    CHECK_FALSE(cli::parse_args(2, argv.data(), out));
    CHECK(out.str().find("random-experiment") != std::string::npos);
  }
}
