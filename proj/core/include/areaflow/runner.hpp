#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "areaflow/acceptance.hpp"
#include "areaflow/diagnostics.hpp"
#include "areaflow/flow_solver.hpp"
#include "areaflow/grid.hpp"

namespace areaflow::runner {

enum class Experiment { example1, radial_subsolution, smooth_benchmark, custom };

std::string to_string(Experiment e);

/// Initial data for the custom experiment.
struct InitialSpec {
  std::string kind = "constant";  ///< constant | cosine | random_bv | random_uniform
  double value = 0.0;
  std::uint64_t seed = 1;
  int pieces = 6;
  double lo = -1.0;
  double hi = 1.0;
};

struct RunConfig {
  Experiment experiment = Experiment::example1;
  DomainSpec grid = IntervalSpec{0.0, 2.0, 400};
  double c = 1.0;          ///< example1 jump height
  int N = 3;               ///< radial dimension
  double truncation = 20;  ///< radial cap M in min(1/r, M)
  double t_end = 1.0;
  std::vector<double> snapshot_times;
  SolverConfig solver;
  std::optional<double> kappa;
  std::string output_dir = "out";
  InitialSpec initial;
};

enum ExitCode : int { kPass = 0, kVerdictFailure = 1, kConfigError = 2, kSolverFailure = 3 };

struct RunReport {
  std::string config_echo;  ///< normalized JSON of the configuration
  std::vector<Verdict> verdicts;
  std::optional<double> regularization_time;
  double seconds = 0.0;
  std::string timeseries_path;
  std::vector<std::string> files;  ///< every file written, report files included
  int exit_code = kPass;
  std::string error;
};

/// Parses JSON text. Applies the per-experiment defaults listed by
/// config_reference(); throws InvalidConfigError on any missing or invalid field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_to_json(const RunConfig& config);

/// Documented keys and defaults, each experiment with a runnable example.
std::string config_reference();

RunReport run(const RunConfig& config);
/// Parse-and-run; a config error gives status 2 and writes nothing.
RunReport run_file(const std::string& path, const std::optional<std::string>& out_dir = {});

/// The acceptance battery as a report: one gated verdict per criterion check.
/// Writes report files when out_dir is given.
RunReport verify_suite(const acceptance::Options& options,
                       const std::optional<std::string>& out_dir = {},
                       const std::function<void(const acceptance::CriterionResult&)>& on_result = {});

std::string format_report(const RunReport& report);
std::string report_to_json(const RunReport& report);

}  // namespace areaflow::runner
