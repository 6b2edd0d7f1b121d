#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "areaflow/flow_solver.hpp"
#include "areaflow/measure.hpp"

namespace areaflow {

struct Verdict {
  std::string name;
  bool passed = false;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  long location = -1;  ///< time index of the worst violation, -1 if none
  bool gated = true;   ///< reported-only verdicts do not affect the exit status
};

/// Passes iff every increment series[k+1] - series[k] is <= tolerance.
/// worst_violation is the largest increment (0 if the series never increases).
Verdict check_monotone(std::string name, std::span<const double> series, double tolerance);

/// Passes iff every value is <= bound + tolerance.
Verdict check_upper_bound(std::string name, std::span<const double> series, double bound,
                          double tolerance);

/// |mean(t) - mean(0)| <= tolerance at every record.
Verdict check_mean_conservation(const Trajectory& traj, double tolerance);

/// ut_l2(t) <= slack * ||u0||_w / t at every recorded t > 0.
Verdict check_ut_decay(const Trajectory& traj, double u0_l2_norm, double slack = 1.5);

/// ||uA(t) - uB(t)||_w nonincreasing up to 2 * inner_tol per step. Both trajectories
/// must store a snapshot at every step (ShapeError on mismatched grids or times).
Verdict check_contraction(const Trajectory& a, const Trajectory& b);
Verdict check_contraction(std::span<const double> distances, double inner_tol);

/// First recorded time after which no face difference reaches kappa for the rest of
/// the trajectory; nullopt if the last record still holds a jump.
std::optional<double> regularization_time(const Trajectory& traj, double kappa);

/// Column extraction helpers.
std::vector<double> series_energy(const Trajectory& traj);
std::vector<double> series_sup(const Trajectory& traj);
std::vector<double> series_lip(const Trajectory& traj, std::size_t from = 0);
std::vector<double> series_ut_sup(const Trajectory& traj, std::size_t from = 1);
std::vector<double> series_ut_l2(const Trajectory& traj);

}  // namespace areaflow
