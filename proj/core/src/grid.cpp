#include "areaflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "areaflow/errors.hpp"
#include "areaflow/parallel.hpp"

namespace areaflow {

namespace {

void require_extent(double lo, double hi, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    std::ostringstream os;
    os << "build_grid: " << what << " must have positive extent, got (" << lo << ", " << hi
       << ")";
    throw InvalidSpecError(os.str());
  }
}

void require_cells(int n, const char* what) {
  if (n < 2) {
    std::ostringstream os;
    os << "build_grid: " << what << " needs at least 2 cells, got " << n;
    throw InvalidSpecError(os.str());
  }
}

void validate(const DomainSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IntervalSpec>) {
          require_extent(s.a, s.b, "interval");
          require_cells(s.n, "interval");
        } else if constexpr (std::is_same_v<T, RectangleSpec>) {
          require_extent(s.ax, s.bx, "rectangle x-range");
          require_extent(s.ay, s.by, "rectangle y-range");
          require_cells(s.nx, "rectangle x-axis");
          require_cells(s.ny, "rectangle y-axis");
        } else {
          if (s.dimension < 2) {
            throw InvalidSpecError("build_grid: radial grids require dimension >= 2");
          }
          require_extent(0.0, s.radius, "radial radius");
          require_cells(s.n, "radial");
        }
      },
      spec);
}

}  // namespace

std::string to_string(GridKind kind) {
  switch (kind) {
    case GridKind::interval:
      return "interval";
    case GridKind::rectangle:
      return "rectangle";
    case GridKind::radial:
      return "radial";
  }
  return "unknown";
}

Grid::Grid(const DomainSpec& spec) : spec_(spec) {
  validate(spec);
  std::size_t cells = 0;

  if (const auto* s = std::get_if<IntervalSpec>(&spec)) {
    kind_ = GridKind::interval;
    shape_ = {s->n, 1};
    h_ = {(s->b - s->a) / s->n, 0.0};
    origin_ = {s->a, 0.0};
    cells = static_cast<std::size_t>(s->n);
  } else if (const auto* r = std::get_if<RectangleSpec>(&spec)) {
    kind_ = GridKind::rectangle;
    axes_ = 2;
    shape_ = {r->nx, r->ny};
    h_ = {(r->bx - r->ax) / r->nx, (r->by - r->ay) / r->ny};
    origin_ = {r->ax, r->ay};
    cells = static_cast<std::size_t>(r->nx) * static_cast<std::size_t>(r->ny);
  } else {
    const auto& b = std::get<RadialSpec>(spec);
    kind_ = GridKind::radial;
    radial_dimension_ = b.dimension;
    shape_ = {b.n, 1};
    h_ = {b.radius / b.n, 0.0};
    origin_ = {0.0, 0.0};
    cells = static_cast<std::size_t>(b.n);
  }

  const int nx = shape_[0];
  const int ny = shape_[1];
  cell_volume_.assign(cells, 0.0);
  owned_.assign(cells, {npos, npos});
  incoming_.assign(cells, {npos, npos});
  group_weight_.assign(cells, 0.0);

  if (kind_ == GridKind::radial) {
    const double h = h_[0];
    const int power = radial_dimension_ - 1;
    for (int i = 0; i < nx; ++i) {
      cell_volume_[i] = std::pow((i + 0.5) * h, power) * h;
    }
  } else {
    const double vol = axes_ == 2 ? h_[0] * h_[1] : h_[0];
    std::fill(cell_volume_.begin(), cell_volume_.end(), vol);
  }

  const std::size_t fx = static_cast<std::size_t>(nx - 1) * static_cast<std::size_t>(ny);
  const std::size_t fy = axes_ == 2 ? static_cast<std::size_t>(nx) * (ny - 1) : 0;
  face_offsets_ = {0, fx, fx + fy};
  const std::size_t faces = fx + fy;
  face_weight_.assign(faces, 0.0);
  face_inv_h_.assign(faces, 0.0);
  face_lo_.assign(faces, 0);
  face_hi_.assign(faces, 0);

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const std::size_t f = static_cast<std::size_t>(i) + static_cast<std::size_t>(nx - 1) * j;
      const std::size_t lo = cell_index(i, j);
      const std::size_t hi = cell_index(i + 1, j);
      face_lo_[f] = lo;
      face_hi_[f] = hi;
      face_inv_h_[f] = 1.0 / h_[0];
      if (kind_ == GridKind::radial) {
        face_weight_[f] = std::pow((i + 1) * h_[0], radial_dimension_ - 1) * h_[0];
      } else {
        face_weight_[f] = cell_volume_[lo];
      }
      owned_[lo][0] = f;
      incoming_[hi][0] = f;
    }
  }
  if (axes_ == 2) {
    for (int j = 0; j + 1 < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t f = fx + static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * j;
        const std::size_t lo = cell_index(i, j);
        const std::size_t hi = cell_index(i, j + 1);
        face_lo_[f] = lo;
        face_hi_[f] = hi;
        face_inv_h_[f] = 1.0 / h_[1];
        face_weight_[f] = cell_volume_[lo];
        owned_[lo][1] = f;
        incoming_[hi][1] = f;
      }
    }
  }

  // Every face in a gradient group carries the same weight, so the group
  // weight is that of any owned face.
  for (std::size_t c = 0; c < cells; ++c) {
    for (int axis = 0; axis < axes_; ++axis) {
      if (owned_[c][axis] != npos) group_weight_[c] = face_weight_[owned_[c][axis]];
    }
  }

  div_lo_.assign(faces, 0.0);
  div_hi_.assign(faces, 0.0);
  for (std::size_t f = 0; f < faces; ++f) {
    div_lo_[f] = face_weight_[f] * face_inv_h_[f] / cell_volume_[face_lo_[f]];
    div_hi_[f] = face_weight_[f] * face_inv_h_[f] / cell_volume_[face_hi_[f]];
  }

  total_volume_ = 0.0;
  for (double v : cell_volume_) total_volume_ += v;

  // ||grad u||^2 = sum_f w_f (u_hi - u_lo)^2 / h_f^2 <= sum_i u_i^2 sum_{f at i} 2 w_f / h_f^2,
  // so the largest per-cell ratio against cell_volume_i bounds the operator norm.
  std::vector<double> row(cells, 0.0);
  for (std::size_t f = 0; f < faces; ++f) {
    const double c2 = 2.0 * face_weight_[f] * face_inv_h_[f] * face_inv_h_[f];
    row[face_lo_[f]] += c2;
    row[face_hi_[f]] += c2;
  }
  gradient_bound_sq_ = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    gradient_bound_sq_ = std::max(gradient_bound_sq_, row[c] / cell_volume_[c]);
  }
}

std::size_t Grid::face_count(int axis) const {
  if (axis < 0 || axis >= axes_) return 0;
  return face_offsets_[axis + 1] - face_offsets_[axis];
}

std::size_t Grid::face_offset(int axis) const {
  return face_offsets_[std::clamp(axis, 0, 2)];
}

double Grid::spacing(int axis) const {
  if (axis < 0 || axis >= axes_) throw std::out_of_range("Grid::spacing: axis out of range");
  return h_[axis];
}

std::array<double, 2> Grid::cell_center(std::size_t cell) const {
  const int nx = shape_[0];
  const int i = static_cast<int>(cell % nx);
  const int j = static_cast<int>(cell / nx);
  return {origin_[0] + (i + 0.5) * h_[0], axes_ == 2 ? origin_[1] + (j + 0.5) * h_[1] : 0.0};
}

std::size_t Grid::cell_index(int i, int j) const {
  return static_cast<std::size_t>(i) + static_cast<std::size_t>(shape_[0]) * j;
}

bool Grid::operator==(const Grid& other) const {
  if (kind_ != other.kind_ || shape_ != other.shape_ || radial_dimension_ != other.radial_dimension_) {
    return false;
  }
  return h_ == other.h_ && origin_ == other.origin_;
}

GridPtr build_grid(const DomainSpec& spec) { return std::make_shared<const Grid>(spec); }

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite entry");
  }
}

}  // namespace

CellField::CellField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_ ? grid_->cell_count() : 0, fill) {}

CellField::CellField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_ || values_.size() != grid_->cell_count()) {
    throw ShapeError("CellField: value count does not match cell count");
  }
  require_finite(values_, "CellField");
}

FaceField::FaceField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_ ? grid_->face_count() : 0, fill) {}

FaceField::FaceField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_ || values_.size() != grid_->face_count()) {
    throw ShapeError("FaceField: value count does not match face count");
  }
  require_finite(values_, "FaceField");
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where) {
  if (!a || !b || (a != b && !(*a == *b))) {
    throw ShapeError(std::string(where) + ": fields live on different grids");
  }
}

void forward_gradient(std::span<const double> u, const Grid& grid, std::span<double> out) {
  detail::parallel_for(grid.face_count(), [&](std::size_t f) {
    out[f] = (u[grid.face_upper_cell(f)] - u[grid.face_lower_cell(f)]) * grid.face_inv_h(f);
  });
}

FaceField forward_gradient(const CellField& u) {
  require_finite(u.values(), "forward_gradient");
  FaceField g(u.grid());
  forward_gradient(u.values(), *u.grid(), g.values());
  return g;
}

void divergence(std::span<const double> p, const Grid& grid, std::span<double> out) {
  const int axes = grid.axes();
  detail::parallel_for(grid.cell_count(), [&](std::size_t c) {
    double acc = 0.0;
    for (int axis = 0; axis < axes; ++axis) {
      const std::size_t up = grid.owned_face(c, axis);
      const std::size_t down = grid.incoming_face(c, axis);
      if (up != Grid::npos) acc += grid.divergence_coeff_lo(up) * p[up];
      if (down != Grid::npos) acc -= grid.divergence_coeff_hi(down) * p[down];
    }
    out[c] = acc;
  });
}

CellField divergence(const FaceField& p) {
  require_finite(p.values(), "divergence");
  CellField d(p.grid());
  divergence(p.values(), *p.grid(), d.values());
  return d;
}

double group_norm_sq(std::span<const double> p, const Grid& grid, std::size_t cell) {
  double acc = 0.0;
  for (int axis = 0; axis < grid.axes(); ++axis) {
    const std::size_t f = grid.owned_face(cell, axis);
    if (f != Grid::npos) acc += p[f] * p[f];
  }
  return acc;
}

CellField group_norm(const FaceField& p) {
  CellField out(p.grid());
  const Grid& grid = *p.grid();
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    out[c] = std::sqrt(group_norm_sq(p.values(), grid, c));
  }
  return out;
}

double inner_product(const CellField& u, const CellField& v) {
  require_same_grid(u.grid(), v.grid(), "inner_product");
  const auto w = u.grid()->cell_volumes();
  return detail::ordered_sum(u.size(), [&](std::size_t i) { return w[i] * u[i] * v[i]; });
}

double inner_product(const FaceField& p, const FaceField& q) {
  require_same_grid(p.grid(), q.grid(), "inner_product");
  const auto w = p.grid()->face_weights();
  return detail::ordered_sum(p.size(), [&](std::size_t f) { return w[f] * p[f] * q[f]; });
}

double weighted_norm(const CellField& u) { return std::sqrt(inner_product(u, u)); }
double weighted_norm(const FaceField& p) { return std::sqrt(inner_product(p, p)); }

double weighted_mean(const CellField& u) {
  const auto w = u.grid()->cell_volumes();
  const double s = detail::ordered_sum(u.size(), [&](std::size_t i) { return w[i] * u[i]; });
  return s / u.grid()->total_volume();
}

double sup_norm(const CellField& u) {
  return detail::ordered_max(u.size(), [&](std::size_t i) { return std::abs(u[i]); });
}

double weighted_distance(const CellField& u, const CellField& v) {
  require_same_grid(u.grid(), v.grid(), "weighted_distance");
  const auto w = u.grid()->cell_volumes();
  return std::sqrt(detail::ordered_sum(u.size(), [&](std::size_t i) {
    const double d = u[i] - v[i];
    return w[i] * d * d;
  }));
}

}  // namespace areaflow
