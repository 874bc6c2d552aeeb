#pragma once

#include <stripbie/geometry.hpp>
#include <stripbie/potential.hpp>
#include <stripbie/solver.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stripbie::cli {

enum class Command { Solve, Field, Sweep, RandomExperiment, Example };

Command command_from_string(const std::string& name);
std::string to_string(Command command);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kSuccess = 0, kInvalidInput = 2, kNotConverged = 3 };

/// One swept parameter, `count` points from `start` to `stop` inclusive.
struct SweepSpec {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 1;

  std::vector<double> values() const;
};

SweepSpec parse_sweep(const std::string& text);

enum class RandomMix { Mixed, Insulators, Conductors, Ellipses };

RandomMix mix_from_string(const std::string& name);
std::string to_string(RandomMix mix);

/// Random layouts for the many-inclusion experiments. Mixed and Ellipses split
/// `m` evenly between conductors and insulators.
struct RandomSpec {
  RandomMix mix = RandomMix::Mixed;
  std::size_t m = 200;
  double r = 0.0075;
  double min_gap = 0.0;    // <= 0: generator default
  double wall_gap = 0.05;

  RandomSceneSpec scene_spec(std::uint64_t seed) const;
};

struct RunConfig {
  Command command = Command::Solve;

  // scene source: exactly one of these
  std::optional<std::filesystem::path> scene_file;
  std::optional<ExampleId> example;
  std::optional<RandomSpec> random;

  std::map<std::string, double> params;
  std::size_t n = 0;        // 0: 2048, or 64 for random experiments
  std::size_t outer_n = 0;  // 0: max(n, 1024)
  std::optional<GridSpec> grid;
  std::filesystem::path out = ".";
  std::uint64_t seed = 1;
  std::optional<SweepSpec> sweep;
  std::size_t reps = 1;
  std::size_t workers = 1;
  SolverOptions solver;

  /// Throws ConfigError when the combination is inconsistent.
  void validate() const;
  DiscretizeOptions discretization() const;
};

/// Reads a JSON configuration document; keys mirror the command-line flags.
RunConfig config_from_json(const std::string& text, RunConfig base = {});

/// Parses argv (program name first). Throws ConfigError on bad input.
/// Returns nullopt when only help or version output was requested.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Example geometry from named parameters (r, a, b).
StripScene example_scene(ExampleId id, const std::map<std::string, double>& params);

/// Scene named by the configuration: a file, an example, or a random layout.
StripScene resolve_scene(const RunConfig& config, std::uint64_t seed);
std::string scene_name(const RunConfig& config);

struct SweepRow {
  double param = 0.0;
  double c = 0.0;
  double phi = 0.0;       // NaN unless the example has slit-like ellipses
  double lambda_y = 0.0;
  double lambda_e = 0.0;  // NaN unless the scene is single-kind circular
  std::size_t n = 0;
  double residual = 0.0;
  std::string status;     // "ok", "not-converged", "invalid: ..."
};

std::vector<SweepRow> run_sweep(const RunConfig& config);
void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows);

struct RandomRow {
  std::size_t experiment = 0;
  std::uint64_t seed = 0;
  double lambda_y = 0.0;
  double lambda_e = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::size_t n = 0;
  double residual = 0.0;
  std::string status;
};

std::vector<RandomRow> run_random_experiment(const RunConfig& config);
void write_random_table(std::ostream& out, const std::vector<RandomRow>& rows);

/// Runs the configured command, writing files under config.out. Returns the
/// process exit code; diagnostics go to `log`.
int run(const RunConfig& config, std::ostream& log);

/// Full command-line entry point.
int main(int argc, const char* const* argv);

}  // namespace stripbie::cli
