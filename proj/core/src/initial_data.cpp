#include "areaflow/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "areaflow/errors.hpp"
#include "areaflow/oracles.hpp"

namespace areaflow {

CellField constant_field(const GridPtr& grid, double value) { return CellField(grid, value); }

CellField quarter_circle_field(const GridPtr& grid, double c) {
  const auto* spec = std::get_if<IntervalSpec>(&grid->spec());
  if (spec == nullptr || spec->a != 0.0 || spec->b != 2.0 || spec->n % 2 != 0) {
    throw InvalidSpecError("quarter_circle_field: needs interval(0, 2, n) with even n");
  }
  const oracles::QuarterCircleProfile profile(c);
  return sample(grid, [&](double x, double) { return profile.initial(x); });
}

CellField truncated_inverse_radius(const GridPtr& grid, double cap) {
  if (grid->kind() != GridKind::radial) {
    throw InvalidSpecError("truncated_inverse_radius: needs a radial grid");
  }
  if (!(cap > 0.0)) throw InvalidConfigError("truncated_inverse_radius: cap must be positive");
  return sample(grid, [&](double r, double) { return std::min(1.0 / r, cap); });
}

CellField cosine_field(const GridPtr& grid) {
  double ax = 0.0, lx = 1.0, ay = 0.0, ly = 1.0;
  if (const auto* s = std::get_if<IntervalSpec>(&grid->spec())) {
    ax = s->a;
    lx = s->b - s->a;
  } else if (const auto* r = std::get_if<RectangleSpec>(&grid->spec())) {
    ax = r->ax;
    lx = r->bx - r->ax;
    ay = r->ay;
    ly = r->by - r->ay;
  } else {
    lx = std::get<RadialSpec>(grid->spec()).radius;
  }
  const bool two_d = grid->axes() == 2;
  return sample(grid, [&](double x, double y) {
    const double cx = std::cos(std::numbers::pi * (x - ax) / lx);
    return two_d ? cx * std::cos(std::numbers::pi * (y - ay) / ly) : cx;
  });
}

CellField random_bv_field(const GridPtr& grid, std::uint64_t seed, int pieces) {
  if (pieces < 1) throw InvalidConfigError("random_bv_field: pieces must be >= 1");
  UniformSource rng(seed);
  const int nx = grid->shape()[0];
  std::vector<int> cuts;
  for (int k = 0; k + 1 < pieces; ++k) {
    cuts.push_back(1 + static_cast<int>(rng.next() * (nx - 1)));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> levels(pieces);
  for (double& l : levels) l = rng.uniform(-1.0, 1.0);

  CellField out(grid);
  for (std::size_t c = 0; c < grid->cell_count(); ++c) {
    const int i = static_cast<int>(c % nx);
    const auto piece = std::upper_bound(cuts.begin(), cuts.end(), i) - cuts.begin();
    out[c] = levels[piece];
  }
  return out;
}

CellField random_uniform_field(const GridPtr& grid, std::uint64_t seed, double lo, double hi) {
  UniformSource rng(seed);
  CellField out(grid);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = rng.uniform(lo, hi);
  return out;
}

CellField restrict_to_coarse(const CellField& fine, const GridPtr& coarse) {
  const Grid& f = *fine.grid();
  if (f.axes() != 1 || coarse->axes() != 1 || f.cell_count() != 2 * coarse->cell_count()) {
    throw ShapeError("restrict_to_coarse: needs 1D grids with a 2:1 cell ratio");
  }
  CellField out(coarse);
  const auto vol = f.cell_volumes();
  for (std::size_t i = 0; i < coarse->cell_count(); ++i) {
    const double w0 = vol[2 * i];
    const double w1 = vol[2 * i + 1];
    out[i] = (w0 * fine[2 * i] + w1 * fine[2 * i + 1]) / (w0 + w1);
  }
  return out;
}

}  // namespace areaflow
