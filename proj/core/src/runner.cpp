#include "areaflow/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "areaflow/errors.hpp"
#include "areaflow/initial_data.hpp"
#include "areaflow/oracles.hpp"
#include "json.hpp"

namespace areaflow::runner {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::example1: return "example1";
    case Experiment::radial_subsolution: return "radial_subsolution";
    case Experiment::smooth_benchmark: return "smooth_benchmark";
    case Experiment::custom: return "custom";
  }
  return "unknown";
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw InvalidConfigError("config: " + msg); }

void only_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
  }
}

double number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) bad("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad("'" + key + "' must be finite");
  return x;
}

double positive(const json& obj, const std::string& key, double fallback) {
  const double x = number(obj, key, fallback);
  if (!(x > 0.0)) bad("'" + key + "' must be positive");
  return x;
}

int integer(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) bad("'" + key + "' must be an integer");
  return v.get<int>();
}

std::optional<double> optional_positive(const json& obj, const std::string& key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return positive(obj, key, 1.0);
}

std::string text(const json& obj, const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) bad("'" + key + "' must be a string");
  return obj.at(key).get<std::string>();
}

Experiment parse_experiment(const std::string& s) {
  if (s == "example1") return Experiment::example1;
  if (s == "radial_subsolution") return Experiment::radial_subsolution;
  if (s == "smooth_benchmark") return Experiment::smooth_benchmark;
  if (s == "custom") return Experiment::custom;
  bad("unknown experiment '" + s + "'");
}

DomainSpec parse_grid(const json& g) {
  const std::string kind = text(g, "kind", "");
  if (kind == "interval") {
    only_keys(g, "grid", {"kind", "a", "b", "n"});
    return IntervalSpec{number(g, "a", 0.0), number(g, "b", 1.0), integer(g, "n", 100)};
  }
  if (kind == "rectangle") {
    only_keys(g, "grid", {"kind", "ax", "bx", "ay", "by", "nx", "ny"});
    return RectangleSpec{number(g, "ax", 0.0), number(g, "bx", 1.0), number(g, "ay", 0.0),
                         number(g, "by", 1.0), integer(g, "nx", 32),   integer(g, "ny", 32)};
  }
  if (kind == "radial") {
    only_keys(g, "grid", {"kind", "dimension", "radius", "n"});
    return RadialSpec{integer(g, "dimension", 3), number(g, "radius", 1.0), integer(g, "n", 400)};
  }
  bad("grid.kind must be interval, rectangle or radial");
}

json grid_to_json(const DomainSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IntervalSpec>) {
          return {{"kind", "interval"}, {"a", s.a}, {"b", s.b}, {"n", s.n}};
        } else if constexpr (std::is_same_v<T, RectangleSpec>) {
          return {{"kind", "rectangle"}, {"ax", s.ax}, {"bx", s.bx}, {"ay", s.ay},
                  {"by", s.by},          {"nx", s.nx}, {"ny", s.ny}};
        } else {
          return {{"kind", "radial"}, {"dimension", s.dimension}, {"radius", s.radius}, {"n", s.n}};
        }
      },
      spec);
}

void apply_experiment_defaults(RunConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::example1:
      cfg.grid = IntervalSpec{0.0, 2.0, 400};
      cfg.solver.tau = 1e-3;
      cfg.t_end = 1.0;
      cfg.snapshot_times = {0.1, 0.2, 0.3, 0.4};
      break;
    case Experiment::radial_subsolution:
      cfg.grid = RadialSpec{3, 1.0, 400};
      cfg.solver.tau = 5e-4;
      cfg.t_end = 0.4;
      break;
    case Experiment::smooth_benchmark:
      cfg.grid = IntervalSpec{0.0, 1.0, 200};
      cfg.solver.tau = 1e-3;
      cfg.t_end = 2.0;
      break;
    case Experiment::custom:
      break;
  }
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Checks the parts of a config that only the library can judge, without writing.
void validate(const RunConfig& cfg, const GridPtr& grid) {
  (void)resolve_steps(cfg.solver, *grid);
  if (cfg.experiment == Experiment::example1) {
    const auto* s = std::get_if<IntervalSpec>(&cfg.grid);
    if (s == nullptr || s->a != 0.0 || s->b != 2.0 || s->n % 2 != 0) {
      bad("example1 needs an interval grid on (0, 2) with even n");
    }
  }
  if (cfg.experiment == Experiment::radial_subsolution) {
    const auto* s = std::get_if<RadialSpec>(&cfg.grid);
    if (s == nullptr) bad("radial_subsolution needs a radial grid");
    if (s->dimension != cfg.N) bad("grid.dimension and N disagree");
    if (cfg.N < 2) bad("N must be >= 2");
  }
  if (cfg.experiment == Experiment::smooth_benchmark && grid->kind() == GridKind::radial) {
    bad("smooth_benchmark needs an interval or rectangle grid");
  }
}

CellField initial_field(const RunConfig& cfg, const GridPtr& grid) {
  switch (cfg.experiment) {
    case Experiment::example1: return quarter_circle_field(grid, cfg.c);
    case Experiment::radial_subsolution: return truncated_inverse_radius(grid, cfg.truncation);
    case Experiment::smooth_benchmark: return cosine_field(grid);
    case Experiment::custom: break;
  }
  const auto& in = cfg.initial;
  if (in.kind == "constant") return constant_field(grid, in.value);
  if (in.kind == "cosine") return cosine_field(grid);
  if (in.kind == "random_bv") return random_bv_field(grid, in.seed, in.pieces);
  if (in.kind == "random_uniform") return random_uniform_field(grid, in.seed, in.lo, in.hi);
  bad("unknown initial.kind '" + in.kind + "'");
}

std::vector<Verdict> battery(const RunConfig& cfg, const Trajectory& traj) {
  std::vector<Verdict> out;
  Verdict mean = check_mean_conservation(traj, 1e-8);
  mean.name = "mean_conservation";
  out.push_back(mean);
  out.push_back(check_monotone("energy_nonincreasing", series_energy(traj), traj.inner_tol));
  out.push_back(check_monotone("sup_nonincreasing", series_sup(traj), 1e-10));
  Verdict ut = check_ut_decay(traj, weighted_norm(traj.initial()), 1.5);
  ut.name = "ut_decay";
  out.push_back(ut);

  if (cfg.experiment == Experiment::example1) {
    const oracles::QuarterCircleProfile profile(cfg.c);
    for (const auto& snap : traj.snapshots) {
      if (!(snap.t > 0.0) || snap.t >= profile.extinction_time()) continue;
      const auto exact = sample(traj.grid, [&](double x, double) { return profile.solution(snap.t, x); });
      Verdict v;
      v.name = "example1_l2_error_t" + g17(snap.t);
      v.worst_violation = weighted_distance(snap.u, exact);
      v.tolerance = 0.02;
      v.passed = v.worst_violation <= v.tolerance;
      v.location = snap.step;
      v.gated = false;
      out.push_back(v);
    }
  }
  // Gradient and speed bounds are only asserted for smooth initial data.
  const bool smooth = cfg.experiment == Experiment::smooth_benchmark ||
                      (cfg.experiment == Experiment::custom &&
                       (cfg.initial.kind == "constant" || cfg.initial.kind == "cosine"));
  Verdict lip = check_monotone("lip_nonincreasing", series_lip(traj), 1e-6);
  Verdict ut_sup = check_monotone("ut_sup_nonincreasing", series_ut_sup(traj, 1), 1e-6);
  lip.gated = ut_sup.gated = smooth;
  out.push_back(lip);
  out.push_back(ut_sup);
  if (cfg.experiment == Experiment::radial_subsolution) {
    const oracles::RadialSubsolution sub(cfg.N);
    double worst = -INFINITY;
    for (int i = 0; i < 100; ++i) {
      const double t = (i + 0.5) * sub.sigma() / 100.0;
      for (int j = 0; j < 100; ++j) {
        worst = std::max(worst, sub.residual(t, 0.05 + (j + 0.5) * 0.0095));
      }
    }
    Verdict v;
    v.name = "subsolution_residual";
    v.worst_violation = worst;
    v.tolerance = 0.0;
    v.passed = worst <= 0.0;
    out.push_back(v);

    double min_lip = INFINITY;
    long where = -1;
    for (std::size_t k = 0; k < traj.records.size(); ++k) {
      if (traj.records[k].t > sub.sigma() + 1e-12) continue;
      if (traj.records[k].lip < min_lip) {
        min_lip = traj.records[k].lip;
        where = static_cast<long>(k);
      }
    }
    Verdict g;
    g.name = "gradient_persists_before_sigma";
    g.worst_violation = 5.0 - min_lip;
    g.tolerance = 0.0;
    g.passed = g.worst_violation <= 0.0;
    g.location = where;
    g.gated = false;
    out.push_back(g);
  }
  return out;
}

void write_timeseries(const fs::path& path, const Trajectory& traj) {
  std::ofstream os(path);
  os << "t,energy,mean,sup,lip,ut_l2,ut_sup,max_face_diff,jump_count\n";
  for (const auto& r : traj.records) {
    os << g17(r.t) << ',' << g17(r.energy) << ',' << g17(r.mean) << ',' << g17(r.sup_norm) << ','
       << g17(r.lip) << ',' << g17(r.ut_l2) << ',' << g17(r.ut_sup) << ','
       << g17(r.max_face_diff) << ',' << r.jump_count << '\n';
  }
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

void write_snapshot(const fs::path& path, const Snapshot& snap) {
  const Grid& g = *snap.u.grid();
  std::ofstream os(path);
  const bool two_d = g.axes() == 2;
  const char* coord = g.kind() == GridKind::radial ? "r" : "x";
  os << coord << (two_d ? ",y" : "") << ",u,flux_left" << (two_d ? ",flux_bottom" : "") << '\n';
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto x = g.cell_center(c);
    os << g17(x[0]);
    if (two_d) os << ',' << g17(x[1]);
    os << ',' << g17(snap.u[c]);
    for (int axis = 0; axis < g.axes(); ++axis) {
      const std::size_t f = g.incoming_face(c, axis);
      os << ',' << g17(f == Grid::npos ? 0.0 : snap.flux[f]);
    }
    os << '\n';
  }
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

json verdict_json(const Verdict& v) {
  return {{"name", v.name},
          {"passed", v.passed},
          {"worst_violation", std::isfinite(v.worst_violation) ? json(v.worst_violation) : json(nullptr)},
          {"tolerance", v.tolerance},
          {"location", v.location},
          {"gated", v.gated}};
}

int verdict_status(const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    if (v.gated && !v.passed) return kVerdictFailure;
  }
  return kPass;
}

void write_reports(const fs::path& dir, RunReport& report) {
  const fs::path txt = dir / "report.txt";
  const fs::path js = dir / "report.json";
  report.files.push_back(txt.string());
  report.files.push_back(js.string());
  std::ofstream(txt) << format_report(report);
  std::ofstream(js) << report_to_json(report) << '\n';
}

}  // namespace

RunConfig parse_config(const std::string& source) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  only_keys(j, "config",
            {"experiment", "grid", "c", "N", "truncation", "tau", "t_end", "snapshot_times",
             "solver", "kappa", "output_dir", "initial"});
  if (!j.contains("experiment")) bad("'experiment' is required");
  RunConfig cfg;
  cfg.experiment = parse_experiment(text(j, "experiment", ""));
  apply_experiment_defaults(cfg);

  if (j.contains("grid")) {
    cfg.grid = parse_grid(j.at("grid"));
  } else if (cfg.experiment == Experiment::custom) {
    bad("custom experiment requires 'grid'");
  }
  cfg.c = positive(j, "c", cfg.c);
  cfg.N = integer(j, "N", std::holds_alternative<RadialSpec>(cfg.grid)
                              ? std::get<RadialSpec>(cfg.grid).dimension
                              : cfg.N);
  if (auto* r = std::get_if<RadialSpec>(&cfg.grid); r && !j.contains("grid")) r->dimension = cfg.N;
  cfg.truncation = positive(j, "truncation", cfg.truncation);
  cfg.solver.tau = positive(j, "tau", cfg.solver.tau);
  cfg.t_end = positive(j, "t_end", cfg.t_end);
  if (j.contains("snapshot_times")) {
    const auto& s = j.at("snapshot_times");
    if (!s.is_array()) bad("'snapshot_times' must be an array");
    cfg.snapshot_times.clear();
    for (const auto& t : s) {
      if (!t.is_number() || !(t.get<double>() >= 0.0)) bad("snapshot_times must be nonnegative numbers");
      cfg.snapshot_times.push_back(t.get<double>());
    }
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    only_keys(s, "solver", {"inner_tol", "max_inner", "check_every", "theta", "sigma", "s", "step_rule"});
    cfg.solver.inner_tol = positive(s, "inner_tol", cfg.solver.inner_tol);
    cfg.solver.max_inner = integer(s, "max_inner", cfg.solver.max_inner);
    cfg.solver.check_every = integer(s, "check_every", cfg.solver.check_every);
    if (cfg.solver.max_inner < 1 || cfg.solver.check_every < 1) {
      bad("solver.max_inner and solver.check_every must be >= 1");
    }
    if (s.contains("theta")) cfg.solver.theta = number(s, "theta", 1.0);
    cfg.solver.sigma = optional_positive(s, "sigma");
    cfg.solver.s = optional_positive(s, "s");
    const std::string rule = text(s, "step_rule", "strongly_convex");
    if (rule == "strongly_convex") {
      cfg.solver.step_rule = StepRule::strongly_convex;
    } else if (rule == "unit") {
      cfg.solver.step_rule = StepRule::unit;
    } else {
      bad("solver.step_rule must be strongly_convex or unit");
    }
  }
  cfg.kappa = optional_positive(j, "kappa");
  cfg.output_dir = text(j, "output_dir", cfg.output_dir);
  if (cfg.output_dir.empty()) bad("'output_dir' must not be empty");

  if (j.contains("initial")) {
    if (cfg.experiment != Experiment::custom) bad("'initial' is only valid for the custom experiment");
    const auto& in = j.at("initial");
    only_keys(in, "initial", {"kind", "value", "seed", "pieces", "lo", "hi"});
    cfg.initial.kind = text(in, "kind", "constant");
    cfg.initial.value = number(in, "value", 0.0);
    if (in.contains("seed")) {
      if (!in.at("seed").is_number_unsigned()) bad("initial.seed must be a nonnegative integer");
      cfg.initial.seed = in.at("seed").get<std::uint64_t>();
    }
    cfg.initial.pieces = integer(in, "pieces", cfg.initial.pieces);
    cfg.initial.lo = number(in, "lo", cfg.initial.lo);
    cfg.initial.hi = number(in, "hi", cfg.initial.hi);
    static const std::set<std::string> kinds{"constant", "cosine", "random_bv", "random_uniform"};
    if (!kinds.count(cfg.initial.kind)) bad("unknown initial.kind '" + cfg.initial.kind + "'");
    if (cfg.initial.pieces < 1) bad("initial.pieces must be >= 1");
    if (!(cfg.initial.lo <= cfg.initial.hi)) bad("initial.lo must not exceed initial.hi");
  } else if (cfg.experiment == Experiment::custom) {
    bad("custom experiment requires 'initial'");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) bad("cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
  json solver = {{"inner_tol", cfg.solver.inner_tol},
                 {"max_inner", cfg.solver.max_inner},
                 {"check_every", cfg.solver.check_every},
                 {"step_rule", cfg.solver.step_rule == StepRule::unit ? "unit" : "strongly_convex"}};
  if (cfg.solver.theta) solver["theta"] = *cfg.solver.theta;
  if (cfg.solver.sigma) solver["sigma"] = *cfg.solver.sigma;
  if (cfg.solver.s) solver["s"] = *cfg.solver.s;
  json j = {{"experiment", to_string(cfg.experiment)},
            {"grid", grid_to_json(cfg.grid)},
            {"tau", cfg.solver.tau},
            {"t_end", cfg.t_end},
            {"snapshot_times", cfg.snapshot_times},
            {"solver", solver},
            {"output_dir", cfg.output_dir}};
  if (cfg.kappa) j["kappa"] = *cfg.kappa;
  if (cfg.experiment == Experiment::example1) j["c"] = cfg.c;
  if (cfg.experiment == Experiment::radial_subsolution) {
    j["N"] = cfg.N;
    j["truncation"] = cfg.truncation;
  }
  if (cfg.experiment == Experiment::custom) {
    j["initial"] = {{"kind", cfg.initial.kind}, {"value", cfg.initial.value}, {"seed", cfg.initial.seed},
                    {"pieces", cfg.initial.pieces}, {"lo", cfg.initial.lo},  {"hi", cfg.initial.hi}};
  }
  return j.dump(2);
}

std::string config_reference() {
  return R"(Run configuration (JSON). Unknown keys are rejected.

  experiment        required; example1 | radial_subsolution | smooth_benchmark | custom
  grid              object with "kind":
                      interval   a (0), b (1), n (100)
                      rectangle  ax (0), bx (1), ay (0), by (1), nx (32), ny (32)
                      radial     dimension (3), radius (1), n (400)
  c                 example1 jump height (1)
  N                 radial_subsolution dimension (3); must match grid.dimension
  truncation        radial_subsolution cap M in min(1/r, M) (20)
  tau               implicit time step
  t_end             final time
  snapshot_times    array of times; t = 0 and t_end are always written
  kappa             jump threshold; default max(3 sqrt(h), 0.1 * max face difference of u0)
  output_dir        directory for outputs ("out"); overridden by --out
  solver            inner_tol (1e-8), max_inner (20000), check_every (10),
                    step_rule (strongly_convex | unit), optional theta, sigma, s
  initial           custom only: kind constant | cosine | random_bv | random_uniform,
                    value (0), seed (1), pieces (6), lo (-1), hi (1)

Experiment defaults:
  example1            grid interval(0, 2, 400), c 1, tau 1e-3, t_end 1,
                      snapshot_times [0.1, 0.2, 0.3, 0.4]
  radial_subsolution  grid radial(3, 1, 400), truncation 20, tau 5e-4, t_end 0.4
  smooth_benchmark    grid interval(0, 1, 200), tau 1e-3, t_end 2
  custom              grid and initial are required; tau 1e-3, t_end 1

Outputs in output_dir:
  timeseries.csv    t,energy,mean,sup,lip,ut_l2,ut_sup,max_face_diff,jump_count
  snapshot_NNN.csv  cell centre coordinates, u, flux on the lower face per axis
  report.txt        human-readable verdicts
  report.json       machine-readable verdicts and the normalized config

Exit status: 0 pass, 1 gated verdict failed, 2 config error, 3 solver failure.

Example:
  {
    "experiment": "example1",
    "c": 1,
    "grid": {"kind": "interval", "a": 0, "b": 2, "n": 400},
    "tau": 0.001,
    "t_end": 1,
    "output_dir": "out/example1"
  }
)";
}

RunReport run(const RunConfig& cfg) {
  RunReport report;
  report.config_echo = config_to_json(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  GridPtr grid;
  CellField u0;
  try {
    grid = build_grid(cfg.grid);
    validate(cfg, grid);
    u0 = initial_field(cfg, grid);
  } catch (const InvalidConfigError& e) {
    report.exit_code = kConfigError;
    report.error = e.what();
    return report;
  } catch (const InvalidSpecError& e) {
    report.exit_code = kConfigError;
    report.error = e.what();
    return report;
  }

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  Trajectory traj;
  try {
    EvolveOptions opts;
    opts.kappa = cfg.kappa;
    traj = cfg.experiment == Experiment::radial_subsolution
               ? radial_evolve(u0, cfg.N, cfg.t_end, cfg.solver, cfg.snapshot_times, opts)
               : evolve(u0, cfg.t_end, cfg.solver, cfg.snapshot_times, opts);
  } catch (const NonConvergenceError& e) {
    report.exit_code = kSolverFailure;
    report.error = e.what();
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_reports(dir, report);
    return report;
  }

  report.verdicts = battery(cfg, traj);
  report.regularization_time = regularization_time(traj, traj.kappa);

  const fs::path ts = dir / "timeseries.csv";
  write_timeseries(ts, traj);
  report.timeseries_path = ts.string();
  report.files.push_back(ts.string());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", k);
    write_snapshot(dir / name, traj.snapshots[k]);
    report.files.push_back((dir / name).string());
  }
  report.exit_code = verdict_status(report.verdicts);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_reports(dir, report);
  return report;
}

RunReport run_file(const std::string& path, const std::optional<std::string>& out_dir) {
  RunConfig cfg;
  try {
    cfg = load_config(path);
  } catch (const InvalidConfigError& e) {
    RunReport report;
    report.exit_code = kConfigError;
    report.error = e.what();
    return report;
  }
  if (out_dir) cfg.output_dir = *out_dir;
  return run(cfg);
}

RunReport verify_suite(const acceptance::Options& options, const std::optional<std::string>& out_dir,
                       const std::function<void(const acceptance::CriterionResult&)>& on_result) {
  RunReport report;
  report.config_echo = json{{"experiment", "verify"},
                            {"inner_tol", options.inner_tol},
                            {"tau_scale", options.tau_scale},
                            {"seed", options.seed}}
                           .dump(2);
  const auto t0 = std::chrono::steady_clock::now();
  acceptance::Suite suite(options);
  try {
    for (const auto& r : suite.run_all(on_result)) {
      Verdict v;
      v.name = "criterion_" + std::to_string(r.id);
      v.passed = r.passed;
      v.location = r.id;
      // One verdict per criterion, carrying its first failing check (else its first).
      const Verdict* shown = r.checks.empty() ? nullptr : &r.checks.front();
      for (const auto& c : r.checks) {
        if (!c.passed) {
          shown = &c;
          break;
        }
      }
      if (shown != nullptr) {
        v.worst_violation = shown->worst_violation;
        v.tolerance = shown->tolerance;
      }
      report.verdicts.push_back(v);
    }
    report.exit_code = verdict_status(report.verdicts);
  } catch (const NonConvergenceError& e) {
    report.exit_code = kSolverFailure;
    report.error = e.what();
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_reports(*out_dir, report);
  }
  return report;
}

std::string format_report(const RunReport& report) {
  std::ostringstream os;
  os << "status " << report.exit_code << "\n";
  if (!report.error.empty()) os << "error: " << report.error << "\n";
  os << "seconds " << report.seconds << "\n";
  if (report.regularization_time) {
    os << "regularization_time " << *report.regularization_time << "\n";
  } else {
    os << "regularization_time none\n";
  }
  for (const auto& v : report.verdicts) {
    os << (v.passed ? "PASS " : "FAIL ") << v.name << " worst=" << v.worst_violation
       << " tol=" << v.tolerance;
    if (v.location >= 0) os << " at=" << v.location;
    if (!v.gated) os << " (reported only)";
    os << "\n";
  }
  if (!report.timeseries_path.empty()) os << "timeseries " << report.timeseries_path << "\n";
  os << "config\n" << report.config_echo << "\n";
  return os.str();
}

std::string report_to_json(const RunReport& report) {
  json verdicts = json::array();
  for (const auto& v : report.verdicts) verdicts.push_back(verdict_json(v));
  json j = {{"config", json::parse(report.config_echo)},
            {"exit_code", report.exit_code},
            {"error", report.error},
            {"seconds", report.seconds},
            {"verdicts", verdicts},
            {"timeseries", report.timeseries_path},
            {"files", report.files}};
  j["regularization_time"] =
      report.regularization_time ? json(*report.regularization_time) : json(nullptr);
  return j.dump(2);
}

}  // namespace areaflow::runner
