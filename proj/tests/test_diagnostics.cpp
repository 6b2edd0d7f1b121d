#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "areaflow/diagnostics.hpp"
#include "areaflow/errors.hpp"
#include "areaflow/initial_data.hpp"

using namespace areaflow;

namespace {

SolverConfig config(double tau) {
  SolverConfig cfg;
  cfg.tau = tau;
  return cfg;
}

}  // namespace

TEST(Measure, ConstantField) {
  auto g = build_grid(IntervalSpec{0.0, 3.0, 30});
  const auto r = measure(CellField(g, 1.5), nullptr, 0.0, 0.0, 0.1);
  EXPECT_NEAR(r.energy, 3.0, 1e-13);
  EXPECT_EQ(r.lip, 0.0);
  EXPECT_EQ(r.jump_count, 0);
  EXPECT_EQ(r.ut_l2, 0.0);
}

TEST(Measure, SlopeOneLip) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 50});
  const auto r = measure(sample(g, [](double x, double) { return x; }), nullptr, 0.0, 0.0, 0.5);
  EXPECT_NEAR(r.lip, 1.0, 1e-12);
}

TEST(Measure, Example1HasJumpAtCentre) {
  auto g = build_grid(IntervalSpec{0.0, 2.0, 400});
  const CellField u = quarter_circle_field(g, 1.0);
  const auto r = measure(u, nullptr, 0.0, 0.0, default_kappa(u));
  EXPECT_GE(r.jump_count, 1);
  const auto jumps = jump_set(u, default_kappa(u));
  ASSERT_EQ(jumps.size(), 1u);
  EXPECT_NEAR(g->cell_center(g->face_lower_cell(jumps[0]))[0] + 0.5 * g->spacing(0), 1.0, 1e-12);
}

TEST(JumpSet, Examples) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 400});
  const CellField s = sample(g, [](double x, double) { return std::sin(2.0 * std::numbers::pi * x); });
  EXPECT_TRUE(jump_set(s, 0.2).empty());
  const CellField step = sample(g, [](double x, double) { return x < 0.5 ? 0.0 : 1.0; });
  EXPECT_EQ(jump_set(step, 0.5).size(), 1u);
  EXPECT_THROW(jump_set(step, 0.0), InvalidConfigError);
}

TEST(CheckMonotone, Examples) {
  const double dec[] = {3.0, 2.0, 1.5, 1.0};
  EXPECT_TRUE(check_monotone("dec", dec, 1e-9).passed);
  const double tol = 1e-8;
  const double bump[] = {3.0, 2.0, 2.0 + 2.0 * tol, 1.0};
  const Verdict v = check_monotone("bump", bump, tol);
  EXPECT_FALSE(v.passed);
  EXPECT_NEAR(v.worst_violation, 2.0 * tol, 1e-15);
  EXPECT_EQ(v.location, 2);
}

TEST(CheckMonotone, EnergyOfRandomRuns) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 60});
  for (int seed = 0; seed < 4; ++seed) {
    const SolverConfig cfg = config(2e-3);
    const Trajectory tr = evolve(random_bv_field(g, 300 + seed, 5), 0.05, cfg);
    EXPECT_TRUE(check_monotone("energy", series_energy(tr), cfg.inner_tol).passed);
    EXPECT_TRUE(check_monotone("sup", series_sup(tr), 1e-10).passed);
    EXPECT_TRUE(check_mean_conservation(tr, 1e-8).passed);
  }
}

TEST(UtDecay, ConstantAndRandomData) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 100});
  const Trajectory c = evolve(CellField(g, 2.0), 0.05, config(1e-2));
  EXPECT_TRUE(check_ut_decay(c, weighted_norm(c.initial())).passed);
  const Trajectory r = evolve(random_uniform_field(g, 12, -1.0, 1.0), 0.2, config(1e-3));
  EXPECT_TRUE(check_ut_decay(r, weighted_norm(r.initial()), 1.5).passed);
}

TEST(RegularizationTime, ConstantAndPersistentJump) {
  auto g = build_grid(IntervalSpec{0.0, 2.0, 100});
  const Trajectory c = evolve(CellField(g, 1.0), 0.05, config(1e-2));
  ASSERT_TRUE(regularization_time(c, 0.3).has_value());
  EXPECT_EQ(*regularization_time(c, 0.3), 0.0);
  const Trajectory j = evolve(quarter_circle_field(g, 2.0), 0.1, config(5e-3));
  EXPECT_FALSE(regularization_time(j, 0.3).has_value());
}

TEST(RegularizationTime, MonotoneInKappa) {
  auto g = build_grid(IntervalSpec{0.0, 2.0, 200});
  const Trajectory tr = evolve(quarter_circle_field(g, 1.0), 0.7, config(2e-3));
  std::optional<double> prev;
  for (double kappa : {0.15, 0.2, 0.3, 0.5, 0.8}) {
    const auto t = regularization_time(tr, kappa);
    ASSERT_TRUE(t.has_value()) << kappa;
    if (prev) {
      EXPECT_LE(*t, *prev);
    }
    prev = t;
  }
  // The jump of height 1 closes near t = 0.5.
  EXPECT_NEAR(*regularization_time(tr, 0.3), 0.5, 0.1);
}

TEST(Contraction, IdenticalAndShiftedData) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 40});
  const double snaps[] = {0.01, 0.02, 0.03, 0.04};
  const CellField u0 = random_bv_field(g, 2, 5);
  const Trajectory a = evolve(u0, 0.05, config(1e-3), snaps);
  const Trajectory b = evolve(u0, 0.05, config(1e-3), snaps);
  const Verdict same = check_contraction(a, b);
  EXPECT_TRUE(same.passed);
  EXPECT_EQ(same.worst_violation, 0.0);

  CellField shifted = u0;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += 0.25;
  const Trajectory s = evolve(shifted, 0.05, config(1e-3), snaps);
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    EXPECT_NEAR(weighted_distance(a.snapshots[k].u, s.snapshots[k].u), 0.25, 1e-7);
  }
}

TEST(Contraction, RandomPairFromSnapshots) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 40});
  std::vector<double> snaps;
  for (int k = 1; k <= 30; ++k) snaps.push_back(k * 1e-3);
  const Trajectory a = evolve(random_bv_field(g, 31, 5), 0.03, config(1e-3), snaps);
  const Trajectory b = evolve(random_bv_field(g, 32, 5), 0.03, config(1e-3), snaps);
  EXPECT_TRUE(check_contraction(a, b).passed);
  const Trajectory c = evolve(random_bv_field(g, 33, 5), 0.03, config(1e-3));
  EXPECT_THROW(check_contraction(a, c), ShapeError);
}

TEST(SmoothData, LipAndUtSupNonincreasing) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 100});
  const Trajectory tr = evolve(cosine_field(g), 0.3, config(1e-3));
  EXPECT_TRUE(check_monotone("lip", series_lip(tr), 1e-6).passed);
  EXPECT_TRUE(check_monotone("ut_sup", series_ut_sup(tr), 1e-6).passed);
}

TEST(MaxPrinciple, SupAndInfBounds) {
  auto g = build_grid(RectangleSpec{0.0, 1.0, 0.0, 1.0, 16, 16});
  const CellField u0 = random_bv_field(g, 88, 5);
  const double hi = *std::max_element(u0.values().begin(), u0.values().end());
  const double lo = *std::min_element(u0.values().begin(), u0.values().end());
  const double snaps[] = {0.005, 0.01, 0.02};
  const Trajectory tr = evolve(u0, 0.02, config(1e-3), snaps);
  for (const auto& s : tr.snapshots) {
    for (double v : s.u.values()) {
      EXPECT_LE(v, hi + 1e-8);
      EXPECT_GE(v, lo - 1e-8);
    }
  }
}
