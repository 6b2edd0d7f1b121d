#include "areaflow/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "areaflow/errors.hpp"
#include "areaflow/initial_data.hpp"
#include "areaflow/oracles.hpp"
#include "areaflow/reference.hpp"

namespace areaflow::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Verdict make_verdict(std::string name, double worst, double tolerance, long location = -1) {
  Verdict v;
  v.name = std::move(name);
  v.worst_violation = worst;
  v.tolerance = tolerance;
  v.location = location;
  v.passed = worst <= tolerance;
  return v;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Translation-speed probe for the quarter-circle run: worst |du/dt + 1| on the upper
// arc away from both the boundary and the jump.
struct SpeedProbe {
  double t_lo = 0.1, t_hi = 0.4, x_lo = 0.1, x_hi = 0.8;
  double worst = 0.0;
  long samples = 0;

  void operator()(const StepObservation& obs) {
    if (obs.t < t_lo - 1e-12 || obs.t > t_hi + 1e-12) return;
    const Grid& grid = *obs.u_prev.grid();
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
      const double x = grid.cell_center(c)[0];
      if (x <= x_lo || x >= x_hi) continue;
      const double speed = (obs.result.u_next[c] - obs.u_prev[c]) / obs.tau;
      worst = std::max(worst, std::abs(speed + 1.0));
      ++samples;
    }
  }
};

CriterionResult start(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

}  // namespace

struct Suite::State {
  Options opt;
  std::map<std::string, Trajectory> runs;
  std::vector<Verdict> conservation;  // criterion 4, one triple per trajectory
  std::optional<SpeedProbe> speed;

  SolverConfig solver(double tau) const {
    SolverConfig cfg;
    cfg.tau = tau * opt.tau_scale;
    cfg.inner_tol = opt.inner_tol;
    return cfg;
  }

  void register_run(const std::string& name, const Trajectory& traj) {
    Verdict m = check_mean_conservation(traj, 1e-8);
    m.name = name + ":mean";
    Verdict e = check_monotone(name + ":energy", series_energy(traj), traj.inner_tol);
    Verdict s = check_monotone(name + ":sup_norm", series_sup(traj), 1e-10);
    conservation.push_back(m);
    conservation.push_back(e);
    conservation.push_back(s);
  }

  const Trajectory& example1(const std::string& key, double c, int n, double tau, double t_end,
                             std::vector<double> snapshots, std::optional<double> kappa = {},
                             StepObserver observer = {}) {
    auto it = runs.find(key);
    if (it != runs.end()) return it->second;
    auto grid = build_grid(IntervalSpec{0.0, 2.0, n});
    const CellField u0 = quarter_circle_field(grid, c);
    EvolveOptions eo;
    eo.kappa = kappa;
    eo.observer = std::move(observer);
    Trajectory traj = evolve(u0, t_end, solver(tau), snapshots, eo);
    register_run(key, traj);
    return runs.emplace(key, std::move(traj)).first->second;
  }

  const Trajectory& c1_n400() {
    return example1("example1_c1_n400", 1.0, 400, 1e-3, 0.4, {0.1, 0.2, 0.3, 0.4});
  }
  const Trajectory& c1_n800() {
    return example1("example1_c1_n800", 1.0, 800, 5e-4, 0.4, {0.1, 0.2, 0.3, 0.4});
  }
  const Trajectory& c1_n200() {
    return example1("example1_c1_n200", 1.0, 200, 2e-3, 0.3, {0.3});
  }
  const Trajectory& c2_n800() {
    if (!speed) speed.emplace();
    return example1("example1_c2_n800", 2.0, 800, 1e-3, 1.2, {}, 0.3,
                    [this](const StepObservation& obs) { (*speed)(obs); });
  }

  const Trajectory& random_bv_n100() {
    auto it = runs.find("random_bv_n100");
    if (it != runs.end()) return it->second;
    auto grid = build_grid(IntervalSpec{0.0, 1.0, 100});
    const CellField u0 = random_bv_field(grid, opt.seed, 6);
    Trajectory traj = evolve(u0, 1.0, solver(1e-3));
    register_run("random_bv_n100", traj);
    return runs.emplace("random_bv_n100", std::move(traj)).first->second;
  }

  const Trajectory& smooth_cosine() {
    auto it = runs.find("smooth_cosine_n200");
    if (it != runs.end()) return it->second;
    auto grid = build_grid(IntervalSpec{0.0, 1.0, 200});
    Trajectory traj = evolve(cosine_field(grid), 2.0, solver(1e-3));
    register_run("smooth_cosine_n200", traj);
    return runs.emplace("smooth_cosine_n200", std::move(traj)).first->second;
  }

  const Trajectory& radial() {
    auto it = runs.find("radial_n3_n400");
    if (it != runs.end()) return it->second;
    auto grid = build_grid(RadialSpec{3, 1.0, 400});
    Trajectory traj = radial_evolve(truncated_inverse_radius(grid, 20.0), 3, 0.4, solver(5e-4));
    register_run("radial_n3_n400", traj);
    return runs.emplace("radial_n3_n400", std::move(traj)).first->second;
  }

  // Criteria ---------------------------------------------------------------

  CriterionResult trajectory_accuracy() {
    CriterionResult r = start(1, "example1 trajectory accuracy (weighted L2 <= 0.02, refinement factor >= 1.4)");
    r.budget_seconds = 120.0;
    const oracles::QuarterCircleProfile profile(1.0);
    const Trajectory& coarse = c1_n400();
    const Trajectory& fine = c1_n800();
    std::ostringstream summary;
    for (double t : {0.1, 0.2, 0.3, 0.4}) {
      const Snapshot* a = coarse.snapshot_at(t, 1e-6 * opt.tau_scale + 1e-9);
      const Snapshot* b = fine.snapshot_at(t, 1e-6 * opt.tau_scale + 1e-9);
      if (a == nullptr || b == nullptr) {
        r.checks.push_back(make_verdict("snapshot t=" + fmt(t), 1.0, 0.0));
        continue;
      }
      const auto exact_a = sample(coarse.grid, [&](double x, double) { return profile.solution(a->t, x); });
      const auto exact_b = sample(fine.grid, [&](double x, double) { return profile.solution(b->t, x); });
      const double ea = weighted_distance(a->u, exact_a);
      const double eb = weighted_distance(b->u, exact_b);
      r.checks.push_back(make_verdict("L2 error n=400 t=" + fmt(t), ea, 0.02));
      // Gate the reduction factor as 1.4 - ea/eb <= 0.
      const double ratio = eb > 0.0 ? ea / eb : INFINITY;
      r.checks.push_back(make_verdict("refinement factor t=" + fmt(t), 1.4 - ratio, 0.0));
      summary << "t=" << fmt(t) << " err400=" << fmt(ea) << " err800=" << fmt(eb)
              << " ratio=" << fmt(ratio) << "; ";
    }
    r.summary = summary.str();
    return r;
  }

  CriterionResult extinction_time() {
    CriterionResult r = start(2, "jump extinction time in [0.9, 1.1]; jump height tracks c - 2t within 0.25");
    r.budget_seconds = 240.0;
    const Trajectory& traj = c2_n800();
    const auto t_reg = regularization_time(traj, 0.3);
    const double dev = t_reg ? std::abs(*t_reg - 1.0) : INFINITY;
    r.checks.push_back(make_verdict("regularization_time - 1", dev, 0.1));
    double worst = 0.0;
    long where = -1;
    for (std::size_t k = 0; k < traj.records.size(); ++k) {
      const auto& rec = traj.records[k];
      if (rec.t < 0.1 - 1e-12 || rec.t > 0.8 + 1e-12) continue;
      const double d = std::abs(rec.max_face_diff - (2.0 - 2.0 * rec.t));
      if (d > worst) {
        worst = d;
        where = static_cast<long>(k);
      }
    }
    r.checks.push_back(make_verdict("|max_face_diff - (c - 2t)|", worst, 0.25, where));
    r.summary = "regularization_time=" + (t_reg ? fmt(*t_reg) : std::string("none")) +
                " worst jump-height deviation=" + fmt(worst);
    return r;
  }

  CriterionResult translation_speed() {
    CriterionResult r = start(3, "upper-arc speed -1 +- 0.05 on x in (0.1, 0.8), t in [0.1, 0.4]");
    c2_n800();
    const double worst = speed && speed->samples > 0 ? speed->worst : INFINITY;
    r.checks.push_back(make_verdict("|du/dt + 1|", worst, 0.05));
    r.summary = "worst |du/dt + 1|=" + fmt(worst) + " over " +
                std::to_string(speed ? speed->samples : 0) + " samples";
    return r;
  }

  CriterionResult conservation_and_dissipation() {
    CriterionResult r = start(4, "mean conserved to 1e-8; energy and sup norm nonincreasing on every run");
    c1_n400();
    c1_n800();
    c1_n200();
    c2_n800();
    random_bv_n100();
    smooth_cosine();
    radial();
    r.checks = conservation;
    r.summary = std::to_string(conservation.size() / 3) + " trajectories checked";
    return r;
  }

  CriterionResult ut_decay() {
    CriterionResult r = start(5, "||u_t|| <= 1.5 ||u0|| / t (example1 c=1, random BV n=100)");
    const Trajectory& ex = c1_n400();
    Verdict a = check_ut_decay(ex, weighted_norm(ex.initial()), 1.5);
    a.name = "example1 ut_decay";
    const Trajectory& bv = random_bv_n100();
    Verdict b = check_ut_decay(bv, weighted_norm(bv.initial()), 1.5);
    b.name = "random_bv ut_decay";
    r.checks = {a, b};
    return r;
  }

  CriterionResult smooth_estimates() {
    CriterionResult r = start(6, "cos(pi x): lip and ut_sup nonincreasing within 1e-6; sup|u(2)| <= 1e-2");
    const Trajectory& traj = smooth_cosine();
    r.checks.push_back(check_monotone("lip nonincreasing", series_lip(traj), 1e-6));
    // ut is a backward difference, so the series starts at the first step.
    r.checks.push_back(check_monotone("ut_sup nonincreasing", series_ut_sup(traj, 1), 1e-6));
    const double final_dist = sup_norm(traj.final_state());
    r.checks.push_back(make_verdict("sup |u(2) - mean|", final_dist, 1e-2));
    r.summary = "sup|u(2)|=" + fmt(final_dist);
    return r;
  }

  CriterionResult oracle_equivalence() {
    CriterionResult r = start(7, "implicit_step matches coordinate descent within 1e-6 (20 problems x 2 taus)");
    r.budget_seconds = 30.0;
    auto grid = build_grid(IntervalSpec{0.0, 2.0, 5});
    double worst = 0.0;
    int problems = 0;
    for (int k = 0; k < 20; ++k) {
      const CellField u_prev = random_uniform_field(grid, opt.seed + 1000 + k, -1.0, 1.0);
      for (double tau : {0.05, 0.5}) {
        const double step = tau * opt.tau_scale;
        SolverConfig cfg = solver(tau);
        const StepResult pd = implicit_step(u_prev, cfg);
        const auto cd = reference::coordinate_descent_step(u_prev.values(), 2.0, step, 1e-13);
        for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(pd.u_next[i] - cd.v[i]));
        ++problems;
      }
    }
    r.checks.push_back(make_verdict("max coordinate difference", worst, 1e-6));
    r.summary = std::to_string(problems) + " problems, worst difference " + fmt(worst);
    return r;
  }

  CriterionResult contraction() {
    CriterionResult r = start(8, "||uA - uB||_w nonincreasing up to 2 inner_tol per step (10 random pairs)");
    auto grid = build_grid(IntervalSpec{0.0, 1.0, 64});
    const SolverConfig cfg = solver(1e-3);
    const double t_end = 0.2;
    double worst = 0.0;
    long where = -1;
    for (int pair = 0; pair < 10; ++pair) {
      const CellField a0 = random_bv_field(grid, opt.seed + 2000 + 2 * pair, 6);
      const CellField b0 = random_bv_field(grid, opt.seed + 2001 + 2 * pair, 6);
      std::vector<CellField> states_a;
      EvolveOptions ea;
      ea.observer = [&](const StepObservation& obs) { states_a.push_back(obs.result.u_next); };
      const Trajectory ta = evolve(a0, t_end, cfg, {}, ea);
      std::vector<double> dist{weighted_distance(a0, b0)};
      EvolveOptions eb;
      eb.observer = [&](const StepObservation& obs) {
        dist.push_back(weighted_distance(states_a.at(obs.step - 1), obs.result.u_next));
      };
      const Trajectory tb = evolve(b0, t_end, cfg, {}, eb);
      register_run("contraction_pair" + std::to_string(pair) + "a", ta);
      register_run("contraction_pair" + std::to_string(pair) + "b", tb);
      const Verdict v = check_contraction(dist, cfg.inner_tol);
      if (v.worst_violation > worst || where < 0) {
        worst = v.worst_violation;
        where = v.location;
      }
    }
    r.checks.push_back(make_verdict("largest distance increment", worst, 2.0 * opt.inner_tol, where));
    return r;
  }

  CriterionResult radial_persistence() {
    CriterionResult r = start(9, "radial N=3: max gradient >= 5 for t <= 0.4; subsolution residual <= 0");
    r.budget_seconds = 180.0;
    const Trajectory& traj = radial();
    double min_lip = INFINITY;
    long where = -1;
    for (std::size_t k = 0; k < traj.records.size(); ++k) {
      if (traj.records[k].t > 0.4 + 1e-12) continue;
      if (traj.records[k].lip < min_lip) {
        min_lip = traj.records[k].lip;
        where = static_cast<long>(k);
      }
    }
    // Gate as 5 - min_lip <= 0.
    r.checks.push_back(make_verdict("5 - min lip", 5.0 - min_lip, 0.0, where));
    const oracles::RadialSubsolution v(3);
    double max_res = -INFINITY;
    for (int i = 0; i < 100; ++i) {
      const double t = (i + 0.5) * (v.sigma() / 100.0);
      for (int j = 0; j < 100; ++j) {
        const double rr = 0.05 + (j + 0.5) * (0.95 / 100.0);
        max_res = std::max(max_res, v.residual(t, rr));
      }
    }
    r.checks.push_back(make_verdict("max subsolution residual", max_res, 0.0));
    r.summary = "min lip=" + fmt(min_lip) + " max residual=" + fmt(max_res);
    return r;
  }

  CriterionResult self_convergence() {
    CriterionResult r = start(10, "example1 t=0.3 self-convergence: successive differences decrease");
    const double t = 0.3;
    const double tol = 1e-6 * opt.tau_scale + 1e-9;
    const Snapshot* s200 = c1_n200().snapshot_at(t, tol);
    const Snapshot* s400 = c1_n400().snapshot_at(t, tol);
    const Snapshot* s800 = c1_n800().snapshot_at(t, tol);
    if (s200 == nullptr || s400 == nullptr || s800 == nullptr) {
      r.checks.push_back(make_verdict("snapshots at t=0.3", 1.0, 0.0));
      return r;
    }
    const double d1 = weighted_distance(restrict_to_coarse(s400->u, s200->u.grid()), s200->u);
    const double d2 = weighted_distance(restrict_to_coarse(s800->u, s400->u.grid()), s400->u);
    r.checks.push_back(make_verdict("d(400,800) - d(200,400)", d2 - d1, 0.0));
    r.summary = "d(200,400)=" + fmt(d1) + " d(400,800)=" + fmt(d2);
    return r;
  }
};

Suite::Suite(Options options) : state_(std::make_unique<State>()) { state_->opt = options; }

Suite::~Suite() = default;

CriterionResult Suite::run(int id) {
  const auto t0 = Clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = state_->trajectory_accuracy(); break;
    case 2: r = state_->extinction_time(); break;
    case 3: r = state_->translation_speed(); break;
    case 4: r = state_->conservation_and_dissipation(); break;
    case 5: r = state_->ut_decay(); break;
    case 6: r = state_->smooth_estimates(); break;
    case 7: r = state_->oracle_equivalence(); break;
    case 8: r = state_->contraction(); break;
    case 9: r = state_->radial_persistence(); break;
    case 10: r = state_->self_convergence(); break;
    default: throw InvalidConfigError("acceptance: unknown criterion " + std::to_string(id));
  }
  r.seconds = seconds_since(t0);
  r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const Verdict& v) { return v.passed || !v.gated; }) &&
             !r.checks.empty();
  if (r.budget_seconds > 0.0) {
    Verdict budget = make_verdict("runtime seconds", r.seconds, r.budget_seconds);
    r.checks.push_back(budget);
    r.passed = r.passed && budget.passed;
  }
  return r;
}

std::vector<CriterionResult> Suite::run_all(
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id : {1, 2, 3, 5, 6, 7, 8, 9, 10, 4}) {
    out.push_back(run(id));
    if (on_result) on_result(out.back());
  }
  std::sort(out.begin(), out.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
  return out;
}

}  // namespace areaflow::acceptance
