#pragma once

#include <span>
#include <vector>

#include "areaflow/grid.hpp"

namespace areaflow {

/// Discrete area functional, split by co-located gradient size for reporting.
struct EnergyBreakdown {
  double total = 0.0;
  double smooth_part = 0.0;  ///< cells with |grad u| <= threshold
  double steep_part = 0.0;   ///< remainder (grid-scale jumps land here)
};

inline constexpr double kDefaultSteepThreshold = 10.0;

/// F_h(u) = sum_i cell_volume_i + sum_i group_weight_i * (sqrt(1 + |g_i|^2) - 1),
/// with g_i the co-located gradient of cell i. On intervals and rectangles the
/// group weight equals the cell volume, so this is sum_i cell_volume_i * sqrt(1 + |g_i|^2).
EnergyBreakdown area_energy(const CellField& u,
                            double steep_threshold = kDefaultSteepThreshold);
double area_energy_value(std::span<const double> u, const Grid& grid);

/// sqrt(1 - |p|^2), the concave conjugate of q -> sqrt(1 + |q|^2) on the unit ball.
/// Throws DomainError for |p| > 1.
double conjugate_value(std::span<const double> p);
double conjugate_value(double p);

/// Result of the scalar radial prox solve.
struct ProxRadius {
  double radius = 0.0;    ///< r in [0, 1)
  double slope = 0.0;     ///< q = r / sqrt(1 - r^2), the matching primal slope
  double residual = 0.0;  ///< sigma * q + r - |p_hat|
  int iterations = 0;
};

/// Solves sigma * r / sqrt(1 - r^2) + r = a for r in [0, 1).
///
/// The equation is solved in the slope variable q = r / sqrt(1 - r^2), where it
/// reads sigma * q + q / sqrt(1 + q^2) = a: the derivative stays in [sigma, sigma + 1]
/// and the root is bracketed by [max(0, (a - 1) / sigma), a / sigma]. Newton steps
/// that leave the bracket fall back to bisection. Throws InvalidConfigError for
/// sigma <= 0.
ProxRadius prox_dual_radius(double a, double sigma);

/// argmin_p -sqrt(1 - |p|^2) + |p - p_hat|^2 / (2 sigma); output lies strictly
/// inside the unit ball.
std::vector<double> prox_dual(std::span<const double> p_hat, double sigma);

/// argmin_v ||v - u_prev||^2 / (2 tau) + ||v - v_hat||^2 / (2 s), cellwise.
CellField prox_quadratic(const CellField& v_hat, const CellField& u_prev, double tau, double s);

}  // namespace areaflow
