#include "areaflow/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "areaflow/errors.hpp"
#include "areaflow/parallel.hpp"

namespace areaflow {

namespace {

constexpr double kProxTolerance = 1e-12;
constexpr int kProxMaxIterations = 100;
const double kBelowOne = std::nextafter(1.0, 0.0);

// sqrt(1 + x2) - 1 without cancellation for small x2.
inline double area_excess(double x2) { return x2 / (std::sqrt(1.0 + x2) + 1.0); }

}  // namespace

double area_energy_value(std::span<const double> u, const Grid& grid) {
  std::vector<double> g(grid.face_count());
  forward_gradient(u, grid, g);
  const auto vol = grid.cell_volumes();
  return detail::ordered_sum(grid.cell_count(), [&](std::size_t c) {
    return vol[c] + grid.group_weight(c) * area_excess(group_norm_sq(g, grid, c));
  });
}

EnergyBreakdown area_energy(const CellField& u, double steep_threshold) {
  const Grid& grid = *u.grid();
  std::vector<double> g(grid.face_count());
  forward_gradient(u.values(), grid, g);
  const auto vol = grid.cell_volumes();
  const double thr2 = steep_threshold * steep_threshold;

  EnergyBreakdown out;
  out.steep_part = detail::ordered_sum(grid.cell_count(), [&](std::size_t c) {
    const double n2 = group_norm_sq(g, grid, c);
    return n2 > thr2 ? vol[c] + grid.group_weight(c) * area_excess(n2) : 0.0;
  });
  out.smooth_part = detail::ordered_sum(grid.cell_count(), [&](std::size_t c) {
    const double n2 = group_norm_sq(g, grid, c);
    return n2 > thr2 ? 0.0 : vol[c] + grid.group_weight(c) * area_excess(n2);
  });
  out.total = out.smooth_part + out.steep_part;
  return out;
}

double conjugate_value(double p) {
  const double p2 = p * p;
  if (!(p2 <= 1.0)) {
    std::ostringstream os;
    os << "conjugate_value: |p| = " << std::abs(p) << " exceeds 1";
    throw DomainError(os.str());
  }
  return std::sqrt(1.0 - p2);
}

double conjugate_value(std::span<const double> p) {
  double p2 = 0.0;
  for (double x : p) p2 += x * x;
  if (!(p2 <= 1.0)) {
    std::ostringstream os;
    os << "conjugate_value: |p| = " << std::sqrt(p2) << " exceeds 1";
    throw DomainError(os.str());
  }
  return std::sqrt(1.0 - p2);
}

ProxRadius prox_dual_radius(double a, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidConfigError("prox_dual: sigma must be positive and finite");
  }
  ProxRadius out;
  if (!(a > 0.0)) return out;

  auto residual = [&](double q) { return sigma * q + q / std::sqrt(1.0 + q * q) - a; };
  double lo = std::max(0.0, (a - 1.0) / sigma);
  double hi = a / sigma;
  double q = std::clamp(a / (sigma + 1.0), lo, hi);
  const double scale = std::max(1.0, a);

  double f = residual(q);
  int it = 0;
  while (std::abs(f) > kProxTolerance * scale && it < kProxMaxIterations) {
    if (f > 0.0) {
      hi = q;
    } else {
      lo = q;
    }
    const double s2 = 1.0 + q * q;
    const double df = sigma + 1.0 / (s2 * std::sqrt(s2));
    double next = q - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == q) break;
    q = next;
    f = residual(q);
    ++it;
  }

  out.slope = q;
  out.radius = std::min(q / std::sqrt(1.0 + q * q), kBelowOne);
  out.residual = f;
  out.iterations = it;
  return out;
}

std::vector<double> prox_dual(std::span<const double> p_hat, double sigma) {
  double n2 = 0.0;
  for (double x : p_hat) n2 += x * x;
  const double norm = std::sqrt(n2);
  const ProxRadius r = prox_dual_radius(norm, sigma);
  std::vector<double> out(p_hat.size(), 0.0);
  if (norm > 0.0) {
    const double scale = r.radius / norm;
    for (std::size_t k = 0; k < p_hat.size(); ++k) out[k] = p_hat[k] * scale;
  }
  return out;
}

CellField prox_quadratic(const CellField& v_hat, const CellField& u_prev, double tau, double s) {
  require_same_grid(v_hat.grid(), u_prev.grid(), "prox_quadratic");
  if (!(tau > 0.0) || !(s > 0.0)) {
    throw InvalidConfigError("prox_quadratic: tau and s must be positive");
  }
  CellField out(v_hat.grid());
  const double inv = 1.0 / (tau + s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (tau * v_hat[i] + s * u_prev[i]) * inv;
  }
  return out;
}

}  // namespace areaflow
