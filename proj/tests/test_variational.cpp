#include <gtest/gtest.h>

#include <cmath>

#include "areaflow/errors.hpp"
#include "areaflow/initial_data.hpp"
#include "areaflow/variational.hpp"

using namespace areaflow;

TEST(AreaEnergy, ConstantFieldIsDomainMeasure) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 50});
  EXPECT_NEAR(area_energy(CellField(g, 2.5)).total, 1.0, 1e-14);
  auto r = build_grid(RectangleSpec{0.0, 2.0, 0.0, 3.0, 7, 9});
  EXPECT_NEAR(area_energy(CellField(r, -1.0)).total, 6.0, 1e-13);
}

TEST(AreaEnergy, UnitSlope) {
  const int n = 100;
  auto g = build_grid(IntervalSpec{0.0, 1.0, n});
  const auto e = area_energy(sample(g, [](double x, double) { return x; }));
  EXPECT_LE(std::abs(e.total - std::sqrt(2.0)), 2.0 / n);
  EXPECT_EQ(e.steep_part, 0.0);
}

TEST(AreaEnergy, UnitStepCountsJumpHeight) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 200});
  const auto e = area_energy(sample(g, [](double x, double) { return x < 0.5 ? 0.0 : 1.0; }));
  EXPECT_NEAR(e.total, 2.0, 0.02);
  EXPECT_GT(e.steep_part, 0.99);
  EXPECT_NEAR(e.smooth_part + e.steep_part, e.total, 1e-14);
}

TEST(AreaEnergy, ConvexOnRandomPairs) {
  auto g = build_grid(RectangleSpec{0.0, 1.0, 0.0, 1.0, 12, 10});
  UniformSource rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const CellField u = random_uniform_field(g, 100 + trial, -2.0, 2.0);
    const CellField w = random_bv_field(g, 500 + trial, 4);
    const double lam = rng.uniform(0.01, 0.99);
    CellField mix(g);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = lam * u[i] + (1.0 - lam) * w[i];
    EXPECT_LE(area_energy(mix).total,
              lam * area_energy(u).total + (1.0 - lam) * area_energy(w).total + 1e-10);
  }
}

TEST(AreaEnergy, TranslationInvariant) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 64});
  const CellField u = random_uniform_field(g, 4, -1.0, 1.0);
  CellField shifted = u;
  for (std::size_t i = 0; i < u.size(); ++i) shifted[i] += 0.5;  // exact in binary
  EXPECT_EQ(area_energy(u).total, area_energy(shifted).total);
}

TEST(Conjugate, Endpoints) {
  EXPECT_EQ(conjugate_value(0.0), 1.0);
  EXPECT_EQ(conjugate_value(1.0), 0.0);
  const double p[] = {0.6, 0.8};
  EXPECT_NEAR(conjugate_value(p), 0.0, 1e-15);
  EXPECT_THROW(conjugate_value(1.5), DomainError);
}

TEST(Conjugate, BruteForceSupremum) {
  auto sup = [](double q) {
    double best = -INFINITY;
    for (int k = -10000; k <= 10000; ++k) {
      const double p = k * 1e-4;
      best = std::max(best, p * q + conjugate_value(p));
    }
    return best;
  };
  EXPECT_NEAR(sup(3.0), std::sqrt(10.0), 1e-3);
  UniformSource rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const double q = rng.uniform(-5.0, 5.0);
    // With grid step d the sup is missed by at most about |q|^3 d^2 / 2 + ...; 1e-4 is generous.
    EXPECT_NEAR(sup(q), std::sqrt(1.0 + q * q), 1e-4);
  }
}

TEST(ProxDual, ZeroMapsToZero) {
  const double z[] = {0.0, 0.0};
  const auto r = prox_dual(z, 1.0);
  EXPECT_EQ(r[0], 0.0);
  EXPECT_EQ(r[1], 0.0);
}

TEST(ProxDual, RadiusForSigmaOneAtTwo) {
  // Independent bisection on sigma r / sqrt(1 - r^2) + r = 2.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid / std::sqrt(1.0 - mid * mid) + mid < 2.0 ? lo : hi) = mid;
  }
  const ProxRadius pr = prox_dual_radius(2.0, 1.0);
  EXPECT_NEAR(pr.radius, 0.5 * (lo + hi), 1e-12);
  EXPECT_NEAR(pr.radius, 0.7747, 1e-4);
  // The returned radius beats every point of a 1e-5 scan of the radial objective.
  auto objective = [](double r) { return -std::sqrt(1.0 - r * r) + (r - 2.0) * (r - 2.0) / 2.0; };
  const double best = objective(pr.radius);
  for (int k = 0; k < 100000; ++k) EXPECT_LE(best, objective(k * 1e-5) + 1e-15);
}

TEST(ProxDual, DefiningEquationNearSaturation) {
  for (double sigma : {1e-3, 0.1, 1.0, 10.0, 1e3, 1e5}) {
    for (double a : {1e-6, 0.5, 2.0, 50.0, 1e4}) {
      const ProxRadius pr = prox_dual_radius(a, sigma);
      ASSERT_LT(pr.radius, 1.0);
      EXPECT_LE(std::abs(pr.residual), 1e-12 * std::max(1.0, a)) << sigma << " " << a;
      // r (1 + sigma / sqrt(1 - r^2)) = a, evaluated through the slope q.
      EXPECT_NEAR(pr.radius + sigma * pr.slope, a, 1e-12 * std::max(1.0, a));
      EXPECT_LE(pr.iterations, 100);
    }
  }
  EXPECT_THROW(prox_dual_radius(1.0, 0.0), InvalidConfigError);
}

TEST(ProxDual, ScanOptimality2D) {
  UniformSource rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const double ph[] = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const double sigma = rng.uniform(0.05, 4.0);
    const auto p = prox_dual(ph, sigma);
    auto obj = [&](double x, double y) {
      return -std::sqrt(std::max(0.0, 1.0 - x * x - y * y)) +
             ((x - ph[0]) * (x - ph[0]) + (y - ph[1]) * (y - ph[1])) / (2.0 * sigma);
    };
    const double best = obj(p[0], p[1]);
    for (int i = -100; i <= 100; ++i) {
      for (int j = -100; j <= 100; ++j) {
        const double x = i * 1e-2, y = j * 1e-2;
        if (x * x + y * y > 1.0) continue;
        EXPECT_LE(best, obj(x, y) + 1e-12);
      }
    }
    // Direction is preserved.
    EXPECT_NEAR(p[0] * ph[1] - p[1] * ph[0], 0.0, 1e-12);
  }
}

TEST(ProxQuadratic, Examples) {
  auto g = build_grid(IntervalSpec{0.0, 1.0, 3});
  const CellField u(g, {1.0, -2.0, 0.5});
  const CellField same = prox_quadratic(u, u, 0.3, 0.7);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(same[i], u[i], 1e-15);
  const CellField v(g, {3.0, 0.0, 1.5});
  const CellField mid = prox_quadratic(v, u, 0.4, 0.4);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(mid[i], 0.5 * (u[i] + v[i]), 1e-15);
  const CellField four(g, 4.0);
  const CellField r = prox_quadratic(four, CellField(g, 0.0), 1.0, 3.0);
  EXPECT_DOUBLE_EQ(r[0], 1.0);
}
