#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "areaflow/grid.hpp"
#include "areaflow/measure.hpp"

namespace areaflow {

/// How unset inner step sizes are chosen.
enum class StepRule {
  /// sigma = sqrt(gamma) / L, s = 1 / (sqrt(gamma) L), theta = 1 / (1 + 2 sqrt(gamma) / L)
  /// with gamma = 1 / tau: both saddle terms are strongly convex (primal modulus 1/tau,
  /// conjugate modulus 1), which gives a linear rate.
  strongly_convex,
  /// sigma = s = 1 / L, theta = 1.
  unit,
};

struct SolverConfig {
  double tau = 1e-3;
  std::optional<double> theta;
  std::optional<double> sigma;
  std::optional<double> s;
  double inner_tol = 1e-8;
  int max_inner = 20000;
  /// The optimality certificate is evaluated after the first iteration and
  /// then every `check_every` iterations.
  int check_every = 10;
  StepRule step_rule = StepRule::strongly_convex;
};

struct InnerSteps {
  double sigma = 0.0;
  double s = 0.0;
  double theta = 1.0;
};

/// Validates cfg against the grid (tau > 0, inner_tol > 0, s * sigma * L^2 <= 1)
/// and fills in the unset step sizes. Throws InvalidConfigError.
InnerSteps resolve_steps(const SolverConfig& cfg, const Grid& grid);

/// Warm-start state for the primal-dual iteration.
struct WarmStart {
  CellField v;
  FaceField p;
};

struct StepResult {
  CellField u_next;  ///< finalized as u_prev + tau * div(flux)
  FaceField flux;    ///< converged dual variable, the discrete z; |flux| < 1 per group
  int inner_iters = 0;
  double kkt_residual = 0.0;
  CellField primal_iterate;  ///< last primal iterate, reused for warm starts

  WarmStart warm_start() const { return {primal_iterate, flux}; }
};

struct KktResidual {
  double primal = 0.0;  ///< ||(u - u_prev)/tau - div p||_w
  double dual = 0.0;    ///< ||p - z(grad u)||_w with z(g) = g / sqrt(1 + |g|^2), per gradient group
  double value() const { return primal > dual ? primal : dual; }
};

/// Optimality residual of the pair (u, p) for the implicit step from u_prev.
///
/// The flux relation is measured in dual space, p - g / sqrt(1 + |g|^2). This is
/// p sqrt(1 + |g|^2) - g divided by sqrt(1 + |g|^2), which stays bounded where the
/// face is saturated (|p| -> 1, grid-scale jumps).
KktResidual kkt_residual_parts(const CellField& u, const FaceField& p, const CellField& u_prev,
                               double tau);
double kkt_residual(const CellField& u, const FaceField& p, const CellField& u_prev, double tau);

/// One minimizing movement: argmin_v F_h(v) + ||v - u_prev||_w^2 / (2 tau), solved by a
/// primal-dual iteration on the saddle form
///   min_v max_{|p| <= 1} <grad v, p>_w + sum_groups w sqrt(1 - |p|^2) + ||v - u_prev||^2 / (2 tau).
/// Throws NonConvergenceError when max_inner is reached above inner_tol.
StepResult implicit_step(const CellField& u_prev, const SolverConfig& cfg,
                         const WarmStart* warm = nullptr);

struct Snapshot {
  double t = 0.0;
  long step = 0;
  CellField u;
  FaceField flux;
};

/// Time-ordered flow states with a diagnostic record at every step.
struct Trajectory {
  GridPtr grid;
  std::vector<double> times;               ///< t_0 = 0 < t_1 < ...
  std::vector<DiagnosticRecord> records;   ///< one per time
  std::vector<Snapshot> snapshots;         ///< requested times, plus t = 0 and the final time
  std::vector<int> inner_iterations;       ///< per step
  std::vector<double> kkt_residuals;       ///< per step
  double kappa = 0.0;
  double inner_tol = 0.0;

  const CellField& initial() const { return snapshots.front().u; }
  const CellField& final_state() const { return snapshots.back().u; }
  /// Snapshot whose time is within `tol` of t, or nullptr.
  const Snapshot* snapshot_at(double t, double tol = 1e-9) const;
};

struct StepObservation {
  long step = 0;  ///< 1-based step index
  double t = 0.0;
  double tau = 0.0;
  const CellField& u_prev;
  const StepResult& result;
};

using StepObserver = std::function<void(const StepObservation&)>;

struct EvolveOptions {
  std::optional<double> kappa;  ///< jump threshold for records; default_kappa(u0) if unset
  StepObserver observer;        ///< called after every accepted step
  std::optional<WarmStart> warm;
};

/// Repeated implicit steps with constant tau (the last step is shortened to land on
/// t_end). Snapshot times are matched to the nearest step. NonConvergenceError
/// carries the offending step index.
Trajectory evolve(const CellField& u0, double t_end, const SolverConfig& cfg,
                  std::span<const double> snapshot_times = {}, const EvolveOptions& opts = {});

/// evolve() on a radial grid of ambient dimension N. Throws ShapeError if the grid
/// is not radial with that dimension.
Trajectory radial_evolve(const CellField& u0, int dimension, double t_end, const SolverConfig& cfg,
                         std::span<const double> snapshot_times = {},
                         const EvolveOptions& opts = {});

}  // namespace areaflow
