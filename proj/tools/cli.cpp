#include "cli.hpp"

#include <stripbie/effective.hpp>
#include <stripbie/errors.hpp>
#include <stripbie/scene_io.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace stripbie::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kRandomDefaultN = 64;
constexpr std::size_t kMinOuterN = 1024;
constexpr std::size_t kDefaultN = 2048;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("cannot parse " + what + " '" + text + "'");
  return v;
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + text + "'");
  return {trim(text.substr(0, eq)), parse_number(trim(text.substr(eq + 1)), "value of " + text.substr(0, eq))};
}

GridSpec parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("--grid expects nx,ny");
  GridSpec g;
  const double nx = parse_number(trim(text.substr(0, comma)), "grid nx");
  const double ny = parse_number(trim(text.substr(comma + 1)), "grid ny");
  if (nx < 1 || ny < 1 || nx != std::floor(nx) || ny != std::floor(ny)) {
    throw ConfigError("grid counts must be positive integers");
  }
  g.nx = static_cast<std::size_t>(nx);
  g.ny = static_cast<std::size_t>(ny);
  return g;
}

bool is_circular(const StripScene& scene, InclusionKind& kind) {
  if (scene.size() == 0) return false;
  kind = scene.inclusions.front().kind;
  for (const auto& inc : scene.inclusions) {
    if (inc.kind != kind) return false;
    if (const auto* e = std::get_if<Ellipse>(&inc.shape); e && e->a != e->b) return false;
  }
  return true;
}

std::size_t resolved_n(const RunConfig& c) {
  if (c.n != 0) return c.n;
  return c.command == Command::RandomExperiment ? kRandomDefaultN : kDefaultN;
}

// Inclusions close to a wall map close to the unit circle, so the outer
// curve keeps at least kMinOuterN nodes even when n is small.
std::size_t resolved_outer_n(const RunConfig& c) {
  if (c.outer_n != 0) return c.outer_n;
  return std::max(resolved_n(c), kMinOuterN);
}

DiscretizeOptions discretization_of(const RunConfig& c) { return c.discretization(); }

// Runs body(i) for i in [0, count) on up to `workers` threads. Each worker
// gets an equal share of the OpenMP threads.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const int inner = std::max(1, omp_get_max_threads() / static_cast<int>(workers));
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      omp_set_num_threads(inner);
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

json scene_echo(const StripScene& scene) { return json::parse(scene_to_text(scene)); }

struct SolveOutcome {
  std::optional<Solution> solution;
  EffectiveResult effective;
  std::string status = "ok";
  std::vector<double> residual_history;
  int exit_code = kSuccess;
};

SolveOutcome solve_scene(const StripScene& scene, const RunConfig& config) {
  SolveOutcome out;
  try {
    out.solution = solve(scene, discretization_of(config), config.solver);
    out.effective = lambda_y(*out.solution);
  } catch (const ConvergenceError& e) {
    out.status = "not-converged";
    out.residual_history = e.residual_history();
    out.exit_code = kNotConverged;
  } catch (const ResolutionError& e) {
    out.status = std::string("invalid: ") + e.what();
    out.exit_code = kInvalidInput;
  }
  return out;
}

json summary_of(const RunConfig& config, const StripScene& scene, const SolveOutcome& o,
                double seconds) {
  json s;
  s["command"] = to_string(config.command);
  s["scene"] = scene_name(config);
  s["m"] = scene.size();
  s["ell"] = scene.conductor_count();
  s["n"] = resolved_n(config);
  s["outer_n"] = resolved_outer_n(config);
  s["params"] = config.params;
  s["status"] = o.status;
  if (o.solution) {
    const auto& r = o.solution->result;
    s["lambda_y"] = o.effective.lambda_y;
    s["mu_t1"] = o.effective.mu_t1;
    s["mu_t2"] = o.effective.mu_t2;
    s["delta"] = r.delta;
    s["c"] = r.c;
    s["residual"] = r.residual;
    s["iterations"] = r.iterations;
    s["h_spread"] = r.max_h_spread();
  } else {
    s["lambda_y"] = nullptr;
    s["delta"] = json::array();
    s["residual"] = o.residual_history.empty() ? json(nullptr) : json(o.residual_history.back());
    s["iterations"] = o.residual_history.size();
  }
  s["concentration"] = scene_concentration(scene);
  s["wall_time"] = seconds;
  s["inclusions"] = scene_echo(scene)["inclusions"];
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string primary_param(ExampleId id) {
  return id == ExampleId::Ex4 || id == ExampleId::Ex5 ? "b" : "r";
}

// Parameters of one sweep point; c and phi are translated to the geometry.
std::map<std::string, double> sweep_params(const RunConfig& config, double value) {
  auto p = config.params;
  const auto& name = config.sweep->param;
  const ExampleId id = *config.example;
  const bool circles = id == ExampleId::Ex1CaseI || id == ExampleId::Ex1CaseII ||
                       id == ExampleId::Ex2 || id == ExampleId::Ex3;
  if (name == "c") {
    if (circles) {
      const double m = id == ExampleId::Ex2 ? 30 : id == ExampleId::Ex3 ? 50 : 5;
      p["r"] = std::sqrt(2.0 * value / (m * std::numbers::pi));
    } else if (id == ExampleId::Ex5) {
      p["a"] = p["b"] = std::sqrt(value / (100.0 * std::numbers::pi));
    } else {
      throw ConfigError("sweeping c needs a circular example");
    }
  } else if (name == "phi") {
    if (circles) throw ConfigError("sweeping phi needs an ellipse example");
    const double m = id == ExampleId::Ex4 ? 5 : 200;
    p["b"] = std::sqrt(2.0 * value / m);
  } else {
    p[name] = value;
  }
  return p;
}

SweepRow evaluate_point(const RunConfig& config, const StripScene& scene, double param,
                        const SolveOutcome* solved = nullptr) {
  SweepRow row;
  row.param = param;
  row.n = resolved_n(config);
  row.c = scene_concentration(scene);
  row.phi = kNaN;
  row.lambda_e = kNaN;
  if (config.example && (*config.example == ExampleId::Ex4 || *config.example == ExampleId::Ex5)) {
    const auto& e = std::get<Ellipse>(scene.inclusions.front().shape);
    row.phi = slit_density(scene.size(), e.b);
  }
  InclusionKind kind;
  if (is_circular(scene, kind)) {
    row.lambda_e = kind == InclusionKind::Insulator ? cma_insulators(row.c) : cma_conductors(row.c);
  }
  std::optional<SolveOutcome> local;
  if (!solved) solved = &local.emplace(solve_scene(scene, config));
  const auto& o = *solved;
  row.status = o.status;
  if (o.solution) {
    row.lambda_y = o.effective.lambda_y;
    row.residual = o.solution->result.residual;
  } else {
    row.lambda_y = kNaN;
    row.residual = o.residual_history.empty() ? kNaN : o.residual_history.back();
  }
  return row;
}

int exit_code_of(const std::vector<std::string>& statuses) {
  int code = kSuccess;
  for (const auto& s : statuses) {
    if (s.starts_with("invalid") || s.starts_with("packing-failed")) return kInvalidInput;
    if (s == "not-converged") code = kNotConverged;
  }
  return code;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Command command_from_string(const std::string& name) {
  for (auto c : {Command::Solve, Command::Field, Command::Sweep, Command::RandomExperiment,
                 Command::Example}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Solve: return "solve";
    case Command::Field: return "field";
    case Command::Sweep: return "sweep";
    case Command::RandomExperiment: return "random-experiment";
    case Command::Example: return "example";
  }
  return "unknown";
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("--sweep expects param=start:stop:count");
  SweepSpec s;
  s.param = trim(text.substr(0, eq));
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(eq + 1));
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
  if (parts.size() != 3) throw ConfigError("--sweep expects param=start:stop:count");
  s.start = parse_number(parts[0], "sweep start");
  s.stop = parse_number(parts[1], "sweep stop");
  const double count = parse_number(parts[2], "sweep count");
  if (count < 1 || count != std::floor(count)) throw ConfigError("sweep count must be a positive integer");
  s.count = static_cast<std::size_t>(count);
  if (s.param != "r" && s.param != "a" && s.param != "b" && s.param != "c" && s.param != "phi") {
    throw ConfigError("cannot sweep '" + s.param + "' (expected r, a, b, c or phi)");
  }
  return s;
}

RandomMix mix_from_string(const std::string& name) {
  for (auto m : {RandomMix::Mixed, RandomMix::Insulators, RandomMix::Conductors, RandomMix::Ellipses}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown random mix '" + name + "'");
}

std::string to_string(RandomMix mix) {
  switch (mix) {
    case RandomMix::Mixed: return "mixed";
    case RandomMix::Insulators: return "insulators";
    case RandomMix::Conductors: return "conductors";
    case RandomMix::Ellipses: return "ellipses";
  }
  return "unknown";
}

RandomSceneSpec RandomSpec::scene_spec(std::uint64_t seed) const {
  const std::size_t half = m / 2;
  RandomSceneSpec spec;
  switch (mix) {
    case RandomMix::Mixed: spec = random_circles_spec(half, m - half, r, seed); break;
    case RandomMix::Insulators: spec = random_circles_spec(0, m, r, seed); break;
    case RandomMix::Conductors: spec = random_circles_spec(m, 0, r, seed); break;
    case RandomMix::Ellipses: spec = random_ellipses_circles_spec(half, m - half, r, seed); break;
  }
  if (min_gap > 0.0) spec.min_gap = min_gap;
  spec.wall_gap = wall_gap;
  return spec;
}

void RunConfig::validate() const {
  const int sources = (scene_file ? 1 : 0) + (example ? 1 : 0) + (random ? 1 : 0);
  if (sources != 1) throw ConfigError("exactly one scene source (--scene, --example or random spec) is required");
  if (n != 0 && (!is_power_of_two(n) || n < 16 || n > 4096)) {
    throw ConfigError("--n must be a power of two in [16, 4096]");
  }
  if (outer_n != 0 && (!is_power_of_two(outer_n) || outer_n < 16)) {
    throw ConfigError("--outer-n must be a power of two >= 16");
  }
  if (reps < 1) throw ConfigError("--reps must be positive");
  if (workers < 1) throw ConfigError("--workers must be positive");
  if (command == Command::Sweep) {
    if (!sweep) throw ConfigError("sweep needs --sweep param=start:stop:count");
    if (!example) throw ConfigError("sweep needs --example");
  } else if (sweep) {
    throw ConfigError("--sweep only applies to the sweep command");
  }
  if (command == Command::RandomExperiment && !random) {
    throw ConfigError("random-experiment needs a random scene spec");
  }
  if (command != Command::RandomExperiment && random) {
    throw ConfigError("random scene specs only apply to random-experiment");
  }
  if (command == Command::Example && !example) throw ConfigError("example needs --example");
  if (random && (random->m == 0 || !(random->r > 0.0))) {
    throw ConfigError("random spec needs m > 0 and r > 0");
  }
}

DiscretizeOptions RunConfig::discretization() const { return {resolved_n(*this), resolved_outer_n(*this)}; }

RunConfig config_from_json(const std::string& text, RunConfig c) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  try {
    if (doc.contains("command")) c.command = command_from_string(doc["command"].get<std::string>());
    if (doc.contains("scene")) c.scene_file = doc["scene"].get<std::string>();
    if (doc.contains("example")) c.example = example_from_string(doc["example"].get<std::string>());
    if (doc.contains("params")) {
      for (const auto& [k, v] : doc["params"].items()) c.params[k] = v.get<double>();
    }
    if (doc.contains("random")) {
      RandomSpec r;
      const auto& j = doc["random"];
      if (j.contains("mix")) r.mix = mix_from_string(j["mix"].get<std::string>());
      r.m = j.value("m", r.m);
      r.r = j.value("r", r.r);
      r.min_gap = j.value("min_gap", r.min_gap);
      r.wall_gap = j.value("wall_gap", r.wall_gap);
      c.random = r;
    }
    c.n = doc.value("n", c.n);
    c.outer_n = doc.value("outer_n", c.outer_n);
    if (doc.contains("grid")) {
      const auto& g = doc["grid"];
      GridSpec spec;
      if (g.is_array() && g.size() == 2) {
        spec.nx = g[0].get<std::size_t>();
        spec.ny = g[1].get<std::size_t>();
      } else {
        spec.nx = g.value("nx", spec.nx);
        spec.ny = g.value("ny", spec.ny);
        spec.x_min = g.value("x_min", spec.x_min);
        spec.x_max = g.value("x_max", spec.x_max);
        spec.y_min = g.value("y_min", spec.y_min);
        spec.y_max = g.value("y_max", spec.y_max);
      }
      c.grid = spec;
    }
    if (doc.contains("out")) c.out = doc["out"].get<std::string>();
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("sweep")) c.sweep = parse_sweep(doc["sweep"].get<std::string>());
    c.reps = doc.value("reps", c.reps);
    c.workers = doc.value("workers", c.workers);
    c.solver.tolerance = doc.value("tolerance", c.solver.tolerance);
    c.solver.max_iterations = doc.value("max_iterations", c.solver.max_iterations);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad configuration value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Temperature fields and effective conductivity of a strip with inclusions", "stripbie"};
  app.require_subcommand(1, 1);

  std::string config_file, scene_file, example, grid, out_dir, sweep, mix;
  std::vector<std::string> params;
  std::size_t n = 0, outer_n = 0, reps = 1, workers = 1, max_iterations = 0;
  std::uint64_t seed = 1;
  double tolerance = 0.0;

  auto* o_config = app.add_option("--config", config_file, "JSON run configuration");
  auto* o_scene = app.add_option("--scene", scene_file, "scene file");
  auto* o_example = app.add_option("--example", example, "example id (ex1-case1 ... ex5)");
  auto* o_param = app.add_option("--param", params, "parameter k=v (repeatable)");
  auto* o_n = app.add_option("--n", n, "nodes per inclusion (power of two, 16..4096)");
  auto* o_outer = app.add_option("--outer-n", outer_n, "nodes on the walls' image");
  auto* o_grid = app.add_option("--grid", grid, "field grid nx,ny");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  auto* o_sweep = app.add_option("--sweep", sweep, "param=start:stop:count");
  auto* o_reps = app.add_option("--reps", reps, "random experiment repetitions");
  auto* o_workers = app.add_option("--workers", workers, "concurrent solves");
  auto* o_mix = app.add_option("--mix", mix, "random layout: mixed, insulators, conductors, ellipses");
  auto* o_tol = app.add_option("--tolerance", tolerance, "GMRES relative tolerance");
  auto* o_maxit = app.add_option("--max-iterations", max_iterations, "GMRES iteration limit");

  Command command = Command::Solve;
  for (auto c : {Command::Solve, Command::Field, Command::Sweep, Command::RandomExperiment,
                 Command::Example}) {
    app.add_subcommand(to_string(c))->fallthrough()->callback([&command, c] { command = c; });
  }
  app.get_subcommand("solve")->description("solve a scene and write summary.json");
  app.get_subcommand("field")->description("solve and write grid.csv with T and q");
  app.get_subcommand("sweep")->description("lambda_y over a parameter range (sweep.csv)");
  app.get_subcommand("random-experiment")->description("repeated random layouts (random.csv)");
  app.get_subcommand("example")->description("run a fixed example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig c;
  if (o_config->count()) {
    std::ifstream in(config_file);
    if (!in) throw ConfigError("cannot read configuration " + config_file);
    std::stringstream buf;
    buf << in.rdbuf();
    c = config_from_json(buf.str());
  }
  c.command = command;
  if (o_scene->count()) c.scene_file = scene_file;
  if (o_example->count()) {
    try {
      c.example = example_from_string(example);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  std::map<std::string, double> given;
  for (const auto& p : params) {
    const auto [k, v] = parse_assignment(p);
    given[k] = v;
  }
  if (command == Command::RandomExperiment) {
    RandomSpec r = c.random.value_or(RandomSpec{});
    if (o_mix->count()) r.mix = mix_from_string(mix);
    for (const auto& [k, v] : given) {
      if (k == "m") {
        if (v < 1 || v != std::floor(v)) throw ConfigError("m must be a positive integer");
        r.m = static_cast<std::size_t>(v);
      } else if (k == "r") {
        r.r = v;
      } else if (k == "min_gap") {
        r.min_gap = v;
      } else if (k == "wall_gap") {
        r.wall_gap = v;
      } else {
        throw ConfigError("unknown random parameter '" + k + "'");
      }
    }
    if (!c.scene_file && !c.example) c.random = r;
  } else {
    if (o_mix->count()) throw ConfigError("--mix only applies to random-experiment");
    for (const auto& [k, v] : given) c.params[k] = v;
  }

  if (o_n->count()) c.n = n;
  if (o_outer->count()) c.outer_n = outer_n;
  if (o_grid->count()) {
    GridSpec g = c.grid.value_or(GridSpec{});
    const auto parsed = parse_grid(grid);
    g.nx = parsed.nx;
    g.ny = parsed.ny;
    c.grid = g;
  }
  if (o_out->count()) c.out = out_dir;
  if (o_seed->count()) c.seed = seed;
  if (o_sweep->count()) c.sweep = parse_sweep(sweep);
  if (o_reps->count()) c.reps = reps;
  if (o_workers->count()) c.workers = workers;
  if (o_tol->count()) c.solver.tolerance = tolerance;
  if (o_maxit->count()) c.solver.max_iterations = max_iterations;
  (void)o_param;
  c.validate();
  return c;
}

StripScene example_scene(ExampleId id, const std::map<std::string, double>& params) {
  ExampleParams p;
  for (const auto& [k, v] : params) {
    if (k == "r") {
      p.r = v;
    } else if (k == "a") {
      p.a = v;
    } else if (k == "b") {
      p.b = v;
    } else {
      throw ConfigError("unknown example parameter '" + k + "'");
    }
  }
  return paper_example(id, p);
}

StripScene resolve_scene(const RunConfig& config, std::uint64_t seed) {
  if (config.scene_file) {
    auto scene = load_scene(*config.scene_file);
    scene.validate();
    return scene;
  }
  if (config.example) return example_scene(*config.example, config.params);
  if (config.random) return random_scene(config.random->scene_spec(seed));
  throw ConfigError("no scene source");
}

std::string scene_name(const RunConfig& config) {
  if (config.scene_file) return config.scene_file->filename().string();
  if (config.example) return stripbie::to_string(*config.example);
  if (config.random) return "random-" + to_string(config.random->mix);
  return "unknown";
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  const auto values = config.sweep->values();
  std::vector<SweepRow> rows(values.size());
  parallel_for(values.size(), config.workers, [&](std::size_t i) {
    try {
      const auto scene = example_scene(*config.example, sweep_params(config, values[i]));
      rows[i] = evaluate_point(config, scene, values[i]);
    } catch (const std::invalid_argument& e) {
      rows[i] = SweepRow{values[i], kNaN, kNaN, kNaN, kNaN, resolved_n(config), kNaN,
                         std::string("invalid: ") + e.what()};
    } catch (const std::out_of_range& e) {
      rows[i] = SweepRow{values[i], kNaN, kNaN, kNaN, kNaN, resolved_n(config), kNaN,
                         std::string("invalid: ") + e.what()};
    }
  });
  return rows;
}

void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "param,c,phi,lambda_y,lambda_e,n,residual,status\n";
  for (const auto& r : rows) {
    out << format_double(r.param) << ',' << format_double(r.c) << ',' << format_double(r.phi) << ','
        << format_double(r.lambda_y) << ',' << format_double(r.lambda_e) << ',' << r.n << ','
        << format_double(r.residual) << ',' << r.status << '\n';
  }
}

std::vector<RandomRow> run_random_experiment(const RunConfig& config) {
  std::vector<RandomRow> rows(config.reps);
  parallel_for(config.reps, config.workers, [&](std::size_t i) {
    RandomRow& row = rows[i];
    row.experiment = i + 1;
    row.seed = config.seed + i;
    row.n = resolved_n(config);
    row.lambda_y = row.lambda_e = row.c1 = row.c2 = row.residual = kNaN;
    StripScene scene;
    try {
      scene = resolve_scene(config, row.seed);
    } catch (const PackingError& e) {
      row.status = std::string("packing-failed: ") + e.what();
      return;
    } catch (const SceneError& e) {
      row.status = std::string("invalid: ") + e.what();
      return;
    }
    row.c1 = scene_concentration(scene, InclusionKind::Conductor);
    row.c2 = scene_concentration(scene, InclusionKind::Insulator);
    row.lambda_e = cma_three_phase(row.c1, row.c2);
    const auto o = solve_scene(scene, config);
    row.status = o.status;
    if (o.solution) {
      row.lambda_y = o.effective.lambda_y;
      row.residual = o.solution->result.residual;
    } else if (!o.residual_history.empty()) {
      row.residual = o.residual_history.back();
    }
  });
  return rows;
}

void write_random_table(std::ostream& out, const std::vector<RandomRow>& rows) {
  out << "experiment,seed,lambda_y,lambda_e,c1,c2,n,residual,status\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.seed << ',' << format_double(r.lambda_y) << ','
        << format_double(r.lambda_e) << ',' << format_double(r.c1) << ',' << format_double(r.c2)
        << ',' << r.n << ',' << format_double(r.residual) << ',' << r.status << '\n';
  }
}

int run(const RunConfig& config, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  std::filesystem::create_directories(config.out);

  if (config.command == Command::Sweep) {
    const auto rows = run_sweep(config);
    std::ostringstream table;
    write_sweep_table(table, rows);
    write_text(config.out / "sweep.csv", table.str());
    std::vector<std::string> statuses;
    for (const auto& r : rows) statuses.push_back(r.status);
    json s;
    s["command"] = "sweep";
    s["scene"] = scene_name(config);
    s["param"] = config.sweep->param;
    s["points"] = rows.size();
    s["failed"] = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status != "ok"; });
    s["n"] = resolved_n(config);
    s["wall_time"] = seconds_since(start);
    write_text(config.out / "summary.json", s.dump(2) + "\n");
    for (const auto& r : rows) {
      if (r.status != "ok") log << "sweep point " << r.param << ": " << r.status << "\n";
    }
    return exit_code_of(statuses);
  }

  if (config.command == Command::RandomExperiment) {
    if (config.random && config.random->m > 500) {
      log << "warning: " << config.random->m
          << " inclusions with a dense O(N^2) matvec is long-running\n";
    }
    const auto rows = run_random_experiment(config);
    std::ostringstream table;
    write_random_table(table, rows);
    write_text(config.out / "random.csv", table.str());
    std::vector<std::string> statuses;
    std::vector<double> lam, lame;
    for (const auto& r : rows) {
      statuses.push_back(r.status);
      if (r.status == "ok") {
        lam.push_back(r.lambda_y);
        lame.push_back(r.lambda_e);
      } else {
        log << "experiment " << r.experiment << " (seed " << r.seed << "): " << r.status << "\n";
      }
    }
    auto stats = [](const std::vector<double>& v) {
      json j;
      if (v.empty()) return json(nullptr);
      double sum = 0.0;
      for (double x : v) sum += x;
      j["mean"] = sum / static_cast<double>(v.size());
      j["min"] = *std::min_element(v.begin(), v.end());
      j["max"] = *std::max_element(v.begin(), v.end());
      return j;
    };
    json s;
    s["command"] = "random-experiment";
    s["scene"] = scene_name(config);
    s["m"] = config.random ? config.random->m : 0;
    s["r"] = config.random ? config.random->r : 0.0;
    s["reps"] = config.reps;
    s["seed"] = config.seed;
    s["n"] = resolved_n(config);
    s["outer_n"] = resolved_outer_n(config);
    s["completed"] = lam.size();
    s["lambda_y"] = stats(lam);
    s["lambda_e"] = stats(lame);
    s["wall_time"] = seconds_since(start);
    write_text(config.out / "summary.json", s.dump(2) + "\n");
    return exit_code_of(statuses);
  }

  const auto scene = resolve_scene(config, config.seed);
  const auto outcome = solve_scene(scene, config);
  json summary = summary_of(config, scene, outcome, 0.0);

  if (outcome.solution) {
    const bool want_grid = config.command == Command::Field || (config.command == Command::Example && config.grid);
    if (want_grid) {
      const auto grid = evaluate_grid(*outcome.solution, config.grid.value_or(GridSpec{}));
      std::ostringstream csv;
      write_grid(csv, grid, scene_name(config), resolved_n(config));
      write_text(config.out / "grid.csv", csv.str());
      summary["grid"] = {{"nx", grid.spec.nx}, {"ny", grid.spec.ny}, {"masked", grid.masked()},
                         {"near_boundary", grid.near_boundary}};
    } else if (config.command == Command::Example) {
      const std::string param = primary_param(*config.example);
      const auto it = config.params.find(param);
      SweepRow row = evaluate_point(config, scene, it == config.params.end() ? kNaN : it->second, &outcome);
      std::ostringstream table;
      write_sweep_table(table, {row});
      write_text(config.out / "lambda.csv", table.str());
      summary["param"] = param;
    }
  }
  summary["wall_time"] = seconds_since(start);
  write_text(config.out / "summary.json", summary.dump(2) + "\n");
  if (outcome.exit_code != kSuccess) log << "solve failed: " << outcome.status << "\n";
  return outcome.exit_code;
}

int main(int argc, const char* const* argv) {
  try {
    const auto config = parse_args(argc, argv, std::cout);
    if (!config) return kSuccess;
    return run(*config, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const SceneError& e) {
    std::cerr << "invalid scene: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const RangeError& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const PackingError& e) {
    std::cerr << "packing failed: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace stripbie::cli
