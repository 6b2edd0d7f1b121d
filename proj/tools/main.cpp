#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "areaflow/parallel.hpp"
#include "areaflow/runner.hpp"

namespace rn = areaflow::runner;

int main(int argc, char** argv) {
  CLI::App app{"areaflow: minimizing-movement solver for the parabolic minimal surface equation"};
  app.require_subcommand(1);
  app.fallthrough();

  int threads = 0;
  std::uint64_t seed = areaflow::acceptance::Options{}.seed;
  std::string out;
  app.add_option("--threads", threads, "Worker count (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Seed for randomized verification data");
  app.add_option("--out", out, "Output directory (overrides output_dir)");

  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  std::string config_path;
  run->add_option("config", config_path, "Path to the config file")->required();

  auto* verify = app.add_subcommand("verify", "Run the full acceptance battery");
  double inner_tol = areaflow::acceptance::Options{}.inner_tol;
  double tau_scale = 1.0;
  verify->add_option("--inner-tol", inner_tol, "Inner primal-dual tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tau-scale", tau_scale, "Multiplier for every time step")
      ->check(CLI::PositiveNumber);

  auto* reference = app.add_subcommand("print-config-reference", "Print documented config keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rn::kConfigError;
  }

  if (threads > 0) areaflow::set_worker_count(threads);

  if (*reference) {
    std::cout << rn::config_reference();
    return 0;
  }

  rn::RunReport report;
  if (*run) {
    report = rn::run_file(config_path, out.empty() ? std::nullopt : std::optional<std::string>(out));
  } else if (*verify) {
    areaflow::acceptance::Options opt;
    opt.inner_tol = inner_tol;
    opt.tau_scale = tau_scale;
    opt.seed = seed;
    report = rn::verify_suite(opt, out.empty() ? std::nullopt : std::optional<std::string>(out),
                              [](const areaflow::acceptance::CriterionResult& r) {
                                std::printf("[%s] %2d %s (%.1fs) %s\n", r.passed ? "PASS" : "FAIL",
                                            r.id, r.name.c_str(), r.seconds, r.summary.c_str());
                                std::fflush(stdout);
                              });
  }
  std::cout << rn::format_report(report);
  return report.exit_code;
}
