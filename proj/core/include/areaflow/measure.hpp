#pragma once

#include <cstddef>
#include <vector>

#include "areaflow/grid.hpp"

namespace areaflow {

/// Per-time measurements of a flow state.
struct DiagnosticRecord {
  double t = 0.0;
  double energy = 0.0;         ///< F_h(u)
  double mean = 0.0;           ///< volume-weighted mean
  double sup_norm = 0.0;       ///< max |u|
  double lip = 0.0;            ///< max co-located |grad u|
  double ut_l2 = 0.0;          ///< ||(u_k - u_{k-1}) / tau||_w, 0 at t = 0
  double ut_sup = 0.0;         ///< max |(u_k - u_{k-1}) / tau|, 0 at t = 0
  double max_face_diff = 0.0;  ///< max |u_hi - u_lo| over interior faces
  long jump_count = 0;         ///< faces with |u_hi - u_lo| >= kappa
};

/// Measures u_k. With `u_prev` null (or tau <= 0) the time-derivative fields are zero.
DiagnosticRecord measure(const CellField& u_k, const CellField* u_prev, double t, double tau,
                         double kappa);

/// Faces whose difference |u_hi - u_lo| reaches kappa (a jump-height proxy).
std::vector<std::size_t> jump_set(const CellField& u, double kappa);

double max_face_difference(const CellField& u);

/// Default jump threshold: max(3 sqrt(h), 0.1 * max face difference of u0).
/// A unit-curvature arc meeting a vertical tangent produces face differences of
/// about sqrt(h) on each side, which must stay below the threshold.
double default_kappa(const CellField& u0);

}  // namespace areaflow
