#pragma once

#include <cstdint>
#include <random>

#include "areaflow/grid.hpp"

namespace areaflow {

/// Uniform doubles in [0, 1). std::mt19937_64 output is fixed by the standard; the
/// bit-to-double mapping is done here (not by a distribution) so sequences agree
/// across standard libraries.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

CellField constant_field(const GridPtr& grid, double value);

/// Quarter-circle profile with jump c at x = 1; requires interval(0, 2, n) with even n
/// so that x = 1 is a face.
CellField quarter_circle_field(const GridPtr& grid, double c);

/// min(1 / r, cap) on a radial grid.
CellField truncated_inverse_radius(const GridPtr& grid, double cap);

/// prod_axis cos(pi * (x_axis - a_axis) / L_axis); satisfies the Neumann condition.
CellField cosine_field(const GridPtr& grid);

/// Piecewise-constant data with `pieces` random levels in [-1, 1] on random cell
/// ranges along axis 0 (BV with genuine jumps). Deterministic in `seed`.
CellField random_bv_field(const GridPtr& grid, std::uint64_t seed, int pieces = 6);

/// I.i.d. uniform cell values in [lo, hi].
CellField random_uniform_field(const GridPtr& grid, std::uint64_t seed, double lo = -1.0,
                               double hi = 1.0);

/// Averages pairs of cells of a 1D grid with 2n cells onto the n-cell grid `coarse`.
CellField restrict_to_coarse(const CellField& fine, const GridPtr& coarse);

}  // namespace areaflow
