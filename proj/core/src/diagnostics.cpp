#include "areaflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "areaflow/errors.hpp"

namespace areaflow {

Verdict check_monotone(std::string name, std::span<const double> series, double tolerance) {
  Verdict v;
  v.name = std::move(name);
  v.tolerance = tolerance;
  v.worst_violation = 0.0;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double inc = series[k] - series[k - 1];
    if (inc > v.worst_violation) {
      v.worst_violation = inc;
      v.location = static_cast<long>(k);
    }
  }
  v.passed = v.worst_violation <= tolerance;
  return v;
}

Verdict check_upper_bound(std::string name, std::span<const double> series, double bound,
                          double tolerance) {
  Verdict v;
  v.name = std::move(name);
  v.tolerance = tolerance;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double excess = series[k] - bound;
    if (excess > v.worst_violation) {
      v.worst_violation = excess;
      v.location = static_cast<long>(k);
    }
  }
  v.passed = v.worst_violation <= tolerance;
  return v;
}

Verdict check_mean_conservation(const Trajectory& traj, double tolerance) {
  Verdict v;
  v.name = "mean_conservation";
  v.tolerance = tolerance;
  const double m0 = traj.records.front().mean;
  for (std::size_t k = 0; k < traj.records.size(); ++k) {
    const double d = std::abs(traj.records[k].mean - m0);
    if (d > v.worst_violation) {
      v.worst_violation = d;
      v.location = static_cast<long>(k);
    }
  }
  v.passed = v.worst_violation <= tolerance;
  return v;
}

Verdict check_ut_decay(const Trajectory& traj, double u0_l2_norm, double slack) {
  Verdict v;
  v.name = "ut_decay";
  v.tolerance = 0.0;
  // Reported as the largest excess ut_l2 - slack * ||u0|| / t.
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    const auto& r = traj.records[k];
    const double excess = r.ut_l2 - slack * u0_l2_norm / r.t;
    if (excess > v.worst_violation) {
      v.worst_violation = excess;
      v.location = static_cast<long>(k);
    }
  }
  v.passed = v.worst_violation <= 0.0;
  return v;
}

Verdict check_contraction(std::span<const double> distances, double inner_tol) {
  Verdict v = check_monotone("contraction", distances, 2.0 * inner_tol);
  return v;
}

Verdict check_contraction(const Trajectory& a, const Trajectory& b) {
  require_same_grid(a.grid, b.grid, "check_contraction");
  if (a.snapshots.size() != b.snapshots.size()) {
    throw ShapeError("check_contraction: trajectories have different snapshot counts");
  }
  std::vector<double> dist;
  dist.reserve(a.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    if (std::abs(a.snapshots[k].t - b.snapshots[k].t) > 1e-12) {
      throw ShapeError("check_contraction: trajectories are sampled at different times");
    }
    dist.push_back(weighted_distance(a.snapshots[k].u, b.snapshots[k].u));
  }
  return check_contraction(dist, std::max(a.inner_tol, b.inner_tol));
}

std::optional<double> regularization_time(const Trajectory& traj, double kappa) {
  if (traj.records.empty()) return std::nullopt;
  long last_jump = -1;
  for (std::size_t k = 0; k < traj.records.size(); ++k) {
    if (traj.records[k].max_face_diff >= kappa) last_jump = static_cast<long>(k);
  }
  if (last_jump < 0) return traj.times.front();
  if (last_jump + 1 >= static_cast<long>(traj.records.size())) return std::nullopt;
  return traj.times[last_jump + 1];
}

namespace {

template <typename F>
std::vector<double> column(const Trajectory& traj, std::size_t from, F&& get) {
  std::vector<double> out;
  for (std::size_t k = from; k < traj.records.size(); ++k) out.push_back(get(traj.records[k]));
  return out;
}

}  // namespace

std::vector<double> series_energy(const Trajectory& traj) {
  return column(traj, 0, [](const DiagnosticRecord& r) { return r.energy; });
}
std::vector<double> series_sup(const Trajectory& traj) {
  return column(traj, 0, [](const DiagnosticRecord& r) { return r.sup_norm; });
}
std::vector<double> series_lip(const Trajectory& traj, std::size_t from) {
  return column(traj, from, [](const DiagnosticRecord& r) { return r.lip; });
}
std::vector<double> series_ut_sup(const Trajectory& traj, std::size_t from) {
  return column(traj, from, [](const DiagnosticRecord& r) { return r.ut_sup; });
}
std::vector<double> series_ut_l2(const Trajectory& traj) {
  return column(traj, 1, [](const DiagnosticRecord& r) { return r.ut_l2; });
}

}  // namespace areaflow
