#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "areaflow/errors.hpp"
#include "areaflow/flow_solver.hpp"
#include "areaflow/initial_data.hpp"
#include "areaflow/oracles.hpp"
#include "areaflow/parallel.hpp"
#include "areaflow/reference.hpp"
#include "areaflow/variational.hpp"

using namespace areaflow;

namespace {

double max_abs_diff(const CellField& a, const CellField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(ResolveSteps, DefaultsSatisfyStepCondition) {
  auto g = build_grid(RectangleSpec{0.0, 1.0, 0.0, 1.0, 16, 16});
  for (auto rule : {StepRule::strongly_convex, StepRule::unit}) {
    SolverConfig cfg;
    cfg.step_rule = rule;
    const InnerSteps st = resolve_steps(cfg, *g);
    EXPECT_LE(st.s * st.sigma * g->gradient_norm_bound_sq(), 1.0 + 1e-12);
    EXPECT_GT(st.theta, 0.0);
    EXPECT_LE(st.theta, 1.0);
  }
}

TEST(ResolveSteps, RejectsBadConfig) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 10});
  SolverConfig cfg;
  cfg.tau = 0.0;
  EXPECT_THROW(resolve_steps(cfg, *g), InvalidConfigError);
  cfg = {};
  cfg.sigma = 1.0;
  cfg.s = 1.0;  // s sigma L^2 = 400
  EXPECT_THROW(resolve_steps(cfg, *g), InvalidConfigError);
  cfg = {};
  cfg.theta = 1.5;
  EXPECT_THROW(resolve_steps(cfg, *g), InvalidConfigError);
  cfg = {};
  cfg.inner_tol = -1.0;
  EXPECT_THROW(resolve_steps(cfg, *g), InvalidConfigError);
}

TEST(ImplicitStep, ConstantIsStationary) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 20});
  const StepResult r = implicit_step(CellField(g, 3.0), SolverConfig{});
  EXPECT_EQ(r.inner_iters, 1);
  for (double v : r.u_next.values()) EXPECT_EQ(v, 3.0);
  for (double p : r.flux.values()) EXPECT_EQ(p, 0.0);
}

TEST(ImplicitStep, MatchesCoordinateDescentOnStep) {
  auto g = build_grid(IntervalSpec{0.0, 2.0, 5});
  const CellField u(g, {0.0, 0.0, 1.0, 1.0, 1.0});
  SolverConfig cfg;
  cfg.tau = 0.1;
  const StepResult pd = implicit_step(u, cfg);
  const auto cd = reference::coordinate_descent_step(u.values(), 2.0, 0.1, 1e-12);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(pd.u_next[i], cd.v[i], 1e-6);
  // Both are minimizers of the same objective.
  EXPECT_NEAR(reference::step_objective(pd.u_next.values(), u.values(), 0.4, 0.1),
              reference::step_objective(cd.v, u.values(), 0.4, 0.1), 1e-9);
}

TEST(ImplicitStep, UnitRuleAgreesWithDefault) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 40});
  const CellField u = random_bv_field(g, 3, 5);
  SolverConfig a;
  a.tau = 0.01;
  SolverConfig b = a;
  b.step_rule = StepRule::unit;
  EXPECT_LE(max_abs_diff(implicit_step(u, a).u_next, implicit_step(u, b).u_next), 1e-6);
}

TEST(ImplicitStep, FluxFeasibleAndMeanExact) {
  auto g = build_grid(RectangleSpec{0.0, 1.0, 0.0, 1.0, 12, 12});
  const CellField u = random_bv_field(g, 17, 6);
  SolverConfig cfg;
  cfg.tau = 0.02;
  const StepResult r = implicit_step(u, cfg);
  for (double v : group_norm(r.flux).values()) EXPECT_LT(v, 1.0);
  EXPECT_NEAR(weighted_mean(r.u_next), weighted_mean(u), 1e-13);
  EXPECT_LE(r.kkt_residual, cfg.inner_tol);
}

TEST(ImplicitStep, EnergyDissipationInequality) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 80});
  for (int trial = 0; trial < 5; ++trial) {
    const CellField u = random_bv_field(g, 40 + trial, 7);
    SolverConfig cfg;
    cfg.tau = 5e-3;
    const StepResult r = implicit_step(u, cfg);
    const double d = weighted_distance(r.u_next, u);
    EXPECT_LE(area_energy(r.u_next).total + d * d / (2.0 * cfg.tau),
              area_energy(u).total + cfg.inner_tol);
  }
}

TEST(ImplicitStep, NonConvergenceIsAnError) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 50});
  SolverConfig cfg;
  cfg.max_inner = 3;
  cfg.inner_tol = 1e-14;
  try {
    implicit_step(random_bv_field(g, 1, 4), cfg);
    FAIL() << "expected NonConvergenceError";
  } catch (const NonConvergenceError& e) {
    EXPECT_GT(e.residual(), 1e-14);
    EXPECT_EQ(e.iterations(), 3);
  }
}

TEST(Kkt, ZeroAtExactStationaryPair) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 10});
  const CellField u(g, 1.0);
  EXPECT_EQ(kkt_residual(u, FaceField(g), u, 0.1), 0.0);
}

TEST(Kkt, ScalesLinearlyWithPerturbation) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 30});
  SolverConfig cfg;
  cfg.tau = 0.01;
  cfg.inner_tol = 1e-12;
  const CellField u_prev = cosine_field(g);
  const StepResult r = implicit_step(u_prev, cfg);
  const CellField dir = random_uniform_field(g, 2, -1.0, 1.0);
  std::vector<double> res;
  for (double eps : {1e-3, 2e-3, 4e-3, 8e-3}) {
    CellField u = r.u_next;
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += eps * dir[i];
    res.push_back(kkt_residual(u, r.flux, u_prev, cfg.tau));
  }
  for (std::size_t k = 1; k < res.size(); ++k) EXPECT_NEAR(res[k] / res[k - 1], 2.0, 0.05);
}

TEST(Evolve, ConstantStaysConstant) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 25});
  const double snaps[] = {0.05};
  SolverConfig cfg;
  cfg.tau = 0.01;
  const Trajectory tr = evolve(CellField(g, 3.0), 0.1, cfg, snaps);
  EXPECT_EQ(tr.records.size(), 11u);
  for (const auto& s : tr.snapshots) {
    for (double v : s.u.values()) EXPECT_EQ(v, 3.0);
  }
  ASSERT_NE(tr.snapshot_at(0.05), nullptr);
}

TEST(Evolve, ShortensLastStep) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 10});
  SolverConfig cfg;
  cfg.tau = 0.03;
  const Trajectory tr = evolve(cosine_field(g), 0.1, cfg);
  EXPECT_EQ(tr.times.size(), 5u);
  EXPECT_DOUBLE_EQ(tr.times.back(), 0.1);
}

TEST(Evolve, Example1EnergyNonincreasing) {
  auto g = build_grid(IntervalSpec{0.0, 2.0, 100});
  SolverConfig cfg;
  cfg.tau = 2e-3;
  const Trajectory tr = evolve(quarter_circle_field(g, 1.0), 0.3, cfg);
  for (std::size_t k = 1; k < tr.records.size(); ++k) {
    EXPECT_LE(tr.records[k].energy, tr.records[k - 1].energy + cfg.inner_tol);
  }
  EXPECT_LT(tr.records.back().energy, tr.records.front().energy - 0.1);
}

TEST(Evolve, RandomDataConvergesToMean) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 50});
  const CellField u0 = random_uniform_field(g, 77, -1.0, 1.0);
  SolverConfig cfg;
  cfg.tau = 0.01;
  const Trajectory tr = evolve(u0, 5.0, cfg);
  const double mean = weighted_mean(u0);
  for (double v : tr.final_state().values()) EXPECT_NEAR(v, mean, 1e-3);
}

TEST(Evolve, MaximumPrincipleAndComparison) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 60});
  const CellField a0 = random_bv_field(g, 8, 6);
  CellField b0 = a0;
  const CellField bump = random_uniform_field(g, 9, 0.0, 0.5);
  for (std::size_t i = 0; i < b0.size(); ++i) b0[i] += bump[i];
  SolverConfig cfg;
  cfg.tau = 2e-3;
  std::vector<CellField> a_states;
  EvolveOptions oa;
  oa.observer = [&](const StepObservation& o) { a_states.push_back(o.result.u_next); };
  const Trajectory ta = evolve(a0, 0.2, cfg, {}, oa);
  const double lo = *std::min_element(a0.values().begin(), a0.values().end());
  const double hi = *std::max_element(a0.values().begin(), a0.values().end());
  EvolveOptions ob;
  ob.observer = [&](const StepObservation& o) {
    const CellField& a = a_states.at(o.step - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_LE(a[i], o.result.u_next[i] + 1e-6);
      EXPECT_GE(a[i], lo - 1e-6);
      EXPECT_LE(a[i], hi + 1e-6);
    }
  };
  evolve(b0, 0.2, cfg, {}, ob);
  EXPECT_EQ(a_states.size(), ta.records.size() - 1);
}

TEST(Evolve, ContractionOfRandomPair) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 40});
  SolverConfig cfg;
  cfg.tau = 5e-3;
  std::vector<CellField> a_states;
  EvolveOptions oa;
  oa.observer = [&](const StepObservation& o) { a_states.push_back(o.result.u_next); };
  const CellField a0 = random_bv_field(g, 21, 5);
  const CellField b0 = random_uniform_field(g, 22, -1.0, 1.0);
  evolve(a0, 0.1, cfg, {}, oa);
  double prev = weighted_distance(a0, b0);
  EvolveOptions ob;
  ob.observer = [&](const StepObservation& o) {
    const double d = weighted_distance(a_states.at(o.step - 1), o.result.u_next);
    EXPECT_LE(d, prev + 2.0 * cfg.inner_tol);
    prev = d;
  };
  evolve(b0, 0.1, cfg, {}, ob);
}

TEST(Evolve, TimeStepRefinementIsFirstOrder) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 40});
  const CellField u0 = cosine_field(g);
  std::vector<CellField> finals;
  for (double tau : {0.04, 0.02, 0.01, 0.005, 0.0025}) {
    SolverConfig cfg;
    cfg.tau = tau;
    cfg.inner_tol = 1e-11;
    finals.push_back(evolve(u0, 0.2, cfg).final_state());
  }
  for (std::size_t k = 0; k + 2 < finals.size(); ++k) {
    const double d1 = weighted_distance(finals[k], finals[k + 1]);
    const double d2 = weighted_distance(finals[k + 1], finals[k + 2]);
    EXPECT_GE(d1 / d2, 1.5);
    EXPECT_LE(d1 / d2, 2.5);
  }
}

TEST(Evolve, ResultsIndependentOfWorkerCount) {
  auto g = build_grid(RectangleSpec{0.0, 1.0, 0.0, 1.0, 80, 80});
  const CellField u0 = random_bv_field(g, 5, 6);
  SolverConfig cfg;
  cfg.tau = 1e-3;
  const int before = worker_count();
  set_worker_count(1);
  const Trajectory a = evolve(u0, 3e-3, cfg);
  set_worker_count(4);
  const Trajectory b = evolve(u0, 3e-3, cfg);
  set_worker_count(before);
  const auto va = a.final_state().values();
  const auto vb = b.final_state().values();
  ASSERT_EQ(va.size(), vb.size());
  EXPECT_TRUE(std::equal(va.begin(), va.end(), vb.begin()));
  EXPECT_EQ(a.records.back().energy, b.records.back().energy);
}

TEST(RadialEvolve, ConstantStationaryAndShapeChecks) {
  auto g = build_grid(RadialSpec{3, 1.0, 20});
  SolverConfig cfg;
  cfg.tau = 0.01;
  const Trajectory tr = radial_evolve(CellField(g, 2.0), 3, 0.05, cfg);
  for (double v : tr.final_state().values()) EXPECT_EQ(v, 2.0);
  EXPECT_THROW(radial_evolve(CellField(g, 2.0), 2, 0.05, cfg), ShapeError);
  auto line = build_grid(IntervalSpec{0.0, 1.0, 20});
  EXPECT_THROW(radial_evolve(CellField(line, 2.0), 3, 0.05, cfg), ShapeError);
}

TEST(RadialEvolve, TruncatedInverseRadiusConservesMean) {
  auto g = build_grid(RadialSpec{3, 1.0, 100});
  SolverConfig cfg;
  cfg.tau = 1e-3;
  const Trajectory tr = radial_evolve(truncated_inverse_radius(g, 20.0), 3, 0.05, cfg);
  for (const auto& r : tr.records) EXPECT_NEAR(r.mean, tr.records.front().mean, 1e-8);
  for (const auto& r : tr.records) EXPECT_GE(r.lip, 5.0);
}
