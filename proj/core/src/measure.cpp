#include "areaflow/measure.hpp"

#include <algorithm>
#include <cmath>

#include "areaflow/errors.hpp"
#include "areaflow/parallel.hpp"
#include "areaflow/variational.hpp"

namespace areaflow {

double max_face_difference(const CellField& u) {
  const Grid& grid = *u.grid();
  return detail::ordered_max(grid.face_count(), [&](std::size_t f) {
    return std::abs(u[grid.face_upper_cell(f)] - u[grid.face_lower_cell(f)]);
  });
}

std::vector<std::size_t> jump_set(const CellField& u, double kappa) {
  if (!(kappa > 0.0)) throw InvalidConfigError("jump_set: kappa must be positive");
  const Grid& grid = *u.grid();
  std::vector<std::size_t> faces;
  for (std::size_t f = 0; f < grid.face_count(); ++f) {
    if (std::abs(u[grid.face_upper_cell(f)] - u[grid.face_lower_cell(f)]) >= kappa) {
      faces.push_back(f);
    }
  }
  return faces;
}

double default_kappa(const CellField& u0) {
  const Grid& grid = *u0.grid();
  double h = 0.0;
  for (int axis = 0; axis < grid.axes(); ++axis) h = std::max(h, grid.spacing(axis));
  return std::max(3.0 * std::sqrt(h), 0.1 * max_face_difference(u0));
}

DiagnosticRecord measure(const CellField& u_k, const CellField* u_prev, double t, double tau,
                         double kappa) {
  const Grid& grid = *u_k.grid();
  DiagnosticRecord rec;
  rec.t = t;
  rec.energy = area_energy_value(u_k.values(), grid);
  rec.mean = weighted_mean(u_k);
  rec.sup_norm = sup_norm(u_k);

  std::vector<double> g(grid.face_count());
  forward_gradient(u_k.values(), grid, g);
  rec.lip = std::sqrt(detail::ordered_max(
      grid.cell_count(), [&](std::size_t c) { return group_norm_sq(g, grid, c); }));

  rec.max_face_diff = 0.0;
  rec.jump_count = 0;
  for (std::size_t f = 0; f < grid.face_count(); ++f) {
    const double d = std::abs(u_k[grid.face_upper_cell(f)] - u_k[grid.face_lower_cell(f)]);
    rec.max_face_diff = std::max(rec.max_face_diff, d);
    if (d >= kappa) ++rec.jump_count;
  }

  if (u_prev != nullptr && tau > 0.0) {
    require_same_grid(u_k.grid(), u_prev->grid(), "measure");
    const auto vol = grid.cell_volumes();
    const double inv_tau = 1.0 / tau;
    rec.ut_l2 = std::sqrt(detail::ordered_sum(u_k.size(), [&](std::size_t i) {
      const double d = (u_k[i] - (*u_prev)[i]) * inv_tau;
      return vol[i] * d * d;
    }));
    rec.ut_sup = detail::ordered_max(u_k.size(), [&](std::size_t i) {
      return std::abs(u_k[i] - (*u_prev)[i]) * inv_tau;
    });
  }
  return rec;
}

}  // namespace areaflow
