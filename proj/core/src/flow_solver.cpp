#include "areaflow/flow_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "areaflow/errors.hpp"
#include "areaflow/parallel.hpp"
#include "areaflow/variational.hpp"

namespace areaflow {

InnerSteps resolve_steps(const SolverConfig& cfg, const Grid& grid) {
  if (!(cfg.tau > 0.0) || !std::isfinite(cfg.tau)) {
    throw InvalidConfigError("SolverConfig: tau must be positive");
  }
  if (!(cfg.inner_tol > 0.0)) throw InvalidConfigError("SolverConfig: inner_tol must be positive");
  if (cfg.max_inner < 1) throw InvalidConfigError("SolverConfig: max_inner must be >= 1");
  if (cfg.check_every < 1) throw InvalidConfigError("SolverConfig: check_every must be >= 1");

  const double l2 = grid.gradient_norm_bound_sq();
  const double l = std::sqrt(l2);
  InnerSteps steps;
  if (cfg.step_rule == StepRule::strongly_convex) {
    const double root_gamma = std::sqrt(1.0 / cfg.tau);
    steps.sigma = root_gamma / l;
    steps.s = 1.0 / (root_gamma * l);
    steps.theta = 1.0 / (1.0 + 2.0 * root_gamma / l);
  } else {
    steps.sigma = 1.0 / l;
    steps.s = 1.0 / l;
    steps.theta = 1.0;
  }
  // A single user-supplied step fixes the other through s * sigma * L^2 = 1.
  if (cfg.sigma && !cfg.s) {
    steps.sigma = *cfg.sigma;
    steps.s = 1.0 / (*cfg.sigma * l2);
  } else if (cfg.s && !cfg.sigma) {
    steps.s = *cfg.s;
    steps.sigma = 1.0 / (*cfg.s * l2);
  } else if (cfg.s && cfg.sigma) {
    steps.sigma = *cfg.sigma;
    steps.s = *cfg.s;
  }
  if (cfg.theta) steps.theta = *cfg.theta;

  if (!(steps.sigma > 0.0) || !(steps.s > 0.0)) {
    throw InvalidConfigError("SolverConfig: sigma and s must be positive");
  }
  if (steps.s * steps.sigma * l2 > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "SolverConfig: s * sigma * L^2 = " << steps.s * steps.sigma * l2 << " exceeds 1";
    throw InvalidConfigError(os.str());
  }
  if (!(steps.theta >= 0.0 && steps.theta <= 1.0)) {
    throw InvalidConfigError("SolverConfig: theta must lie in [0, 1]");
  }
  return steps;
}

namespace {

// Dual residual ||p - z(grad u)||_w, with `g` scratch space for the gradient.
double dual_residual(std::span<const double> u, std::span<const double> p, const Grid& grid,
                     std::vector<double>& g) {
  forward_gradient(u, grid, g);
  const int axes = grid.axes();
  const double acc = detail::ordered_sum(grid.cell_count(), [&](std::size_t c) {
    const double w = grid.group_weight(c);
    if (w == 0.0) return 0.0;
    const double inv = 1.0 / std::sqrt(1.0 + group_norm_sq(g, grid, c));
    double r2 = 0.0;
    for (int axis = 0; axis < axes; ++axis) {
      const std::size_t f = grid.owned_face(c, axis);
      if (f == Grid::npos) continue;
      const double d = p[f] - g[f] * inv;
      r2 += d * d;
    }
    return w * r2;
  });
  return std::sqrt(acc);
}

double primal_residual(std::span<const double> u, std::span<const double> p,
                       std::span<const double> u_prev, double tau, const Grid& grid,
                       std::vector<double>& div) {
  divergence(p, grid, div);
  const auto vol = grid.cell_volumes();
  const double inv_tau = 1.0 / tau;
  return std::sqrt(detail::ordered_sum(grid.cell_count(), [&](std::size_t i) {
    const double d = (u[i] - u_prev[i]) * inv_tau - div[i];
    return vol[i] * d * d;
  }));
}

}  // namespace

KktResidual kkt_residual_parts(const CellField& u, const FaceField& p, const CellField& u_prev,
                               double tau) {
  require_same_grid(u.grid(), p.grid(), "kkt_residual");
  require_same_grid(u.grid(), u_prev.grid(), "kkt_residual");
  if (!(tau > 0.0)) throw InvalidConfigError("kkt_residual: tau must be positive");
  const Grid& grid = *u.grid();
  std::vector<double> g(grid.face_count());
  std::vector<double> div(grid.cell_count());
  KktResidual r;
  r.primal = primal_residual(u.values(), p.values(), u_prev.values(), tau, grid, div);
  r.dual = dual_residual(u.values(), p.values(), grid, g);
  return r;
}

double kkt_residual(const CellField& u, const FaceField& p, const CellField& u_prev, double tau) {
  return kkt_residual_parts(u, p, u_prev, tau).value();
}

StepResult implicit_step(const CellField& u_prev, const SolverConfig& cfg, const WarmStart* warm) {
  const GridPtr& grid_ptr = u_prev.grid();
  const Grid& grid = *grid_ptr;
  for (double x : u_prev.values()) {
    if (!std::isfinite(x)) throw DomainError("implicit_step: non-finite input");
  }
  const InnerSteps steps = resolve_steps(cfg, grid);
  const double tau = cfg.tau;
  const std::size_t nc = grid.cell_count();
  const std::size_t nf = grid.face_count();
  const int axes = grid.axes();

  std::vector<double> v(u_prev.values().begin(), u_prev.values().end());
  std::vector<double> p(nf, 0.0);
  if (warm != nullptr) {
    require_same_grid(grid_ptr, warm->v.grid(), "implicit_step warm start");
    require_same_grid(grid_ptr, warm->p.grid(), "implicit_step warm start");
    std::copy(warm->v.values().begin(), warm->v.values().end(), v.begin());
    std::copy(warm->p.values().begin(), warm->p.values().end(), p.begin());
  }
  std::vector<double> vbar = v;
  std::vector<double> g(nf, 0.0);
  std::vector<double> div(nc, 0.0);
  std::vector<double> u_fin(nc, 0.0);
  const auto uprev = u_prev.values();

  const double sigma = steps.sigma;
  const double s = steps.s;
  const double theta = steps.theta;
  const double mix = 1.0 / (tau + s);

  double residual = 0.0;
  int it = 0;
  while (true) {
    ++it;
    // Dual ascent and group-wise prox of the conjugate.
    forward_gradient(vbar, grid, g);
    detail::parallel_for(nc, [&](std::size_t c) {
      double n2 = 0.0;
      for (int axis = 0; axis < axes; ++axis) {
        const std::size_t f = grid.owned_face(c, axis);
        if (f == Grid::npos) continue;
        const double ph = p[f] + sigma * g[f];
        p[f] = ph;
        n2 += ph * ph;
      }
      if (n2 == 0.0) return;
      const double norm = std::sqrt(n2);
      const double scale = prox_dual_radius(norm, sigma).radius / norm;
      for (int axis = 0; axis < axes; ++axis) {
        const std::size_t f = grid.owned_face(c, axis);
        if (f != Grid::npos) p[f] *= scale;
      }
    });

    // Primal prox of the proximity term, then extrapolation.
    divergence(p, grid, div);
    detail::parallel_for(nc, [&](std::size_t i) {
      const double vhat = v[i] + s * div[i];
      const double vnew = (tau * vhat + s * uprev[i]) * mix;
      vbar[i] = vnew + theta * (vnew - v[i]);
      v[i] = vnew;
    });

    if (it == 1 || it % cfg.check_every == 0 || it == cfg.max_inner) {
      detail::parallel_for(nc, [&](std::size_t i) { u_fin[i] = uprev[i] + tau * div[i]; });
      const double dual = dual_residual(u_fin, p, grid, g);
      const double primal = primal_residual(u_fin, p, uprev, tau, grid, div);
      residual = std::max(primal, dual);
      if (residual <= cfg.inner_tol) break;
      if (it >= cfg.max_inner) {
        std::ostringstream os;
        os << "implicit_step: no convergence after " << it << " iterations (residual "
           << residual << " > " << cfg.inner_tol << ")";
        throw NonConvergenceError(os.str(), residual, it);
      }
    }
  }

  StepResult out;
  out.u_next = CellField(grid_ptr, std::move(u_fin));
  out.flux = FaceField(grid_ptr, std::move(p));
  out.primal_iterate = CellField(grid_ptr, std::move(v));
  out.inner_iters = it;
  out.kkt_residual = residual;
  return out;
}

const Snapshot* Trajectory::snapshot_at(double t, double tol) const {
  const Snapshot* best = nullptr;
  for (const auto& snap : snapshots) {
    if (std::abs(snap.t - t) <= tol && (best == nullptr || std::abs(snap.t - t) < std::abs(best->t - t))) {
      best = &snap;
    }
  }
  return best;
}

Trajectory evolve(const CellField& u0, double t_end, const SolverConfig& cfg,
                  std::span<const double> snapshot_times, const EvolveOptions& opts) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw InvalidConfigError("evolve: t_end must be positive");
  }
  const GridPtr& grid = u0.grid();
  resolve_steps(cfg, *grid);

  const double tau = cfg.tau;
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(t_end / tau - 1e-9)));
  auto time_of = [&](long k) { return k == steps ? t_end : std::min(t_end, k * tau); };

  std::vector<long> snap_steps;
  for (double ts : snapshot_times) {
    if (!(ts >= 0.0) || ts > t_end + 1e-12) {
      throw InvalidConfigError("evolve: snapshot time outside [0, t_end]");
    }
    snap_steps.push_back(std::clamp(std::lround(ts / tau), 0L, steps));
  }
  snap_steps.push_back(0);
  snap_steps.push_back(steps);
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

  Trajectory traj;
  traj.grid = grid;
  traj.kappa = opts.kappa ? *opts.kappa : default_kappa(u0);
  traj.inner_tol = cfg.inner_tol;
  traj.times.reserve(steps + 1);
  traj.records.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.records.push_back(measure(u0, nullptr, 0.0, 0.0, traj.kappa));
  traj.snapshots.push_back({0.0, 0, u0, FaceField(grid)});
  std::size_t next_snap = 1;

  CellField u = u0;
  std::optional<WarmStart> warm = opts.warm;
  SolverConfig step_cfg = cfg;
  for (long k = 1; k <= steps; ++k) {
    const double t = time_of(k);
    step_cfg.tau = t - time_of(k - 1);
    StepResult res;
    try {
      res = implicit_step(u, step_cfg, warm ? &*warm : nullptr);
    } catch (const NonConvergenceError& e) {
      std::ostringstream os;
      os << "evolve: step " << k << " (t = " << t << "): " << e.what();
      throw NonConvergenceError(os.str(), e.residual(), e.iterations(), k);
    }
    traj.times.push_back(t);
    traj.records.push_back(measure(res.u_next, &u, t, step_cfg.tau, traj.kappa));
    traj.inner_iterations.push_back(res.inner_iters);
    traj.kkt_residuals.push_back(res.kkt_residual);
    if (opts.observer) opts.observer(StepObservation{k, t, step_cfg.tau, u, res});
    if (next_snap < snap_steps.size() && snap_steps[next_snap] == k) {
      traj.snapshots.push_back({t, k, res.u_next, res.flux});
      ++next_snap;
    }
    warm = res.warm_start();
    u = std::move(res.u_next);
  }
  return traj;
}

Trajectory radial_evolve(const CellField& u0, int dimension, double t_end, const SolverConfig& cfg,
                         std::span<const double> snapshot_times, const EvolveOptions& opts) {
  const Grid& grid = *u0.grid();
  if (grid.kind() != GridKind::radial || grid.radial_dimension() != dimension) {
    throw ShapeError("radial_evolve: initial data must live on a radial grid of the given dimension");
  }
  if (dimension < 2) throw InvalidSpecError("radial_evolve: dimension must be >= 2");
  return evolve(u0, t_end, cfg, snapshot_times, opts);
}

}  // namespace areaflow
