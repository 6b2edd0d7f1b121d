#pragma once

#include <span>
#include <vector>

namespace areaflow::reference {

/// Brute-force minimizer of one implicit step on a uniform 1D interval, written
/// against the objective formula directly and sharing no code with the
/// primal-dual solver:
///
///   J(v) = sum_{i < n-1} h sqrt(1 + ((v_{i+1} - v_i) / h)^2) + h
///        + sum_i h (v_i - u_prev_i)^2 / (2 tau)
///
/// Cyclic coordinate descent; each coordinate is minimized by golden-section
/// search on the bracket spanned by its neighbours and u_prev_i, which contains the
/// 1D minimizer of the convex slice.
struct CoordinateDescentResult {
  std::vector<double> v;
  int sweeps = 0;
  double last_change = 0.0;
};

double step_objective(std::span<const double> v, std::span<const double> u_prev, double h,
                      double tau);

CoordinateDescentResult coordinate_descent_step(std::span<const double> u_prev, double length,
                                                double tau, double tol = 1e-10,
                                                int max_sweeps = 200000);

}  // namespace areaflow::reference
