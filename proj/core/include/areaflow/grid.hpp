#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace areaflow {

struct IntervalSpec {
  double a = 0.0;
  double b = 1.0;
  int n = 2;
};

struct RectangleSpec {
  double ax = 0.0;
  double bx = 1.0;
  double ay = 0.0;
  double by = 1.0;
  int nx = 2;
  int ny = 2;
};

/// Radially symmetric functions on the ball B_R in R^N, sampled on (0, R).
struct RadialSpec {
  int dimension = 3;
  double radius = 1.0;
  int n = 2;
};

using DomainSpec = std::variant<IntervalSpec, RectangleSpec, RadialSpec>;

enum class GridKind { interval, rectangle, radial };

std::string to_string(GridKind kind);

/// Cell-centred grid with the zero-flux boundary encoded by omission: only
/// interior faces are stored, so every discrete flux has vanishing normal
/// trace and the weighted cell sum of any divergence telescopes to zero.
///
/// Inner products:
///   cells  <u, v> = sum_i  cell_volume_i * u_i * v_i
///   faces  <p, q> = sum_f  face_weight_f * p_f * q_f
/// forward_gradient and divergence are exact negative adjoints for them.
///
/// Each cell owns the faces on its upper side (one per axis, when present).
/// The owned faces form the cell's gradient group: the co-located gradient
/// of a cell is the Euclidean vector of its owned face differences.
class Grid {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit Grid(const DomainSpec& spec);

  const DomainSpec& spec() const noexcept { return spec_; }
  GridKind kind() const noexcept { return kind_; }
  /// Number of coordinate axes carrying faces (1 for interval/radial, 2 for rectangle).
  int axes() const noexcept { return axes_; }
  /// Ambient dimension of the radial ball; 0 for other kinds.
  int radial_dimension() const noexcept { return radial_dimension_; }

  std::size_t cell_count() const noexcept { return cell_volume_.size(); }
  std::size_t face_count() const noexcept { return face_weight_.size(); }
  std::size_t face_count(int axis) const;
  /// First face index of the given axis in a FaceField.
  std::size_t face_offset(int axis) const;

  double spacing(int axis) const;
  std::array<int, 2> shape() const noexcept { return shape_; }

  std::span<const double> cell_volumes() const noexcept { return cell_volume_; }
  std::span<const double> face_weights() const noexcept { return face_weight_; }
  double total_volume() const noexcept { return total_volume_; }

  std::size_t face_lower_cell(std::size_t f) const { return face_lo_[f]; }
  std::size_t face_upper_cell(std::size_t f) const { return face_hi_[f]; }
  int face_axis(std::size_t f) const { return f < face_offset(1) ? 0 : 1; }

  /// Face on the upper side of `cell` along `axis`, or npos at the boundary.
  std::size_t owned_face(std::size_t cell, int axis) const { return owned_[cell][axis]; }
  /// Face on the lower side of `cell` along `axis`, or npos at the boundary.
  std::size_t incoming_face(std::size_t cell, int axis) const { return incoming_[cell][axis]; }
  /// Measure weight of the cell's gradient group (0 if the cell owns no face).
  double group_weight(std::size_t cell) const { return group_weight_[cell]; }

  /// Cell centre coordinates (x, y); radial grids report (r, 0).
  std::array<double, 2> cell_center(std::size_t cell) const;
  std::size_t cell_index(int i, int j = 0) const;

  /// Upper bound on ||forward_gradient||^2 in the weighted norms above.
  double gradient_norm_bound_sq() const noexcept { return gradient_bound_sq_; }

  // Precomputed coefficients used by the sweeps.
  double face_inv_h(std::size_t f) const { return face_inv_h_[f]; }
  /// face_weight_f / (h_f * cell_volume_i) for the cell on either side of f.
  double divergence_coeff_lo(std::size_t f) const { return div_lo_[f]; }
  double divergence_coeff_hi(std::size_t f) const { return div_hi_[f]; }

  bool operator==(const Grid& other) const;

 private:
  DomainSpec spec_;
  GridKind kind_;
  int axes_ = 1;
  int radial_dimension_ = 0;
  std::array<int, 2> shape_{0, 1};
  std::array<double, 2> h_{0.0, 0.0};
  std::array<double, 2> origin_{0.0, 0.0};
  std::array<std::size_t, 3> face_offsets_{0, 0, 0};
  std::vector<double> cell_volume_;
  std::vector<double> face_weight_;
  std::vector<double> face_inv_h_;
  std::vector<double> div_lo_;
  std::vector<double> div_hi_;
  std::vector<std::size_t> face_lo_;
  std::vector<std::size_t> face_hi_;
  std::vector<std::array<std::size_t, 2>> owned_;
  std::vector<std::array<std::size_t, 2>> incoming_;
  std::vector<double> group_weight_;
  double total_volume_ = 0.0;
  double gradient_bound_sq_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates the descriptor and builds the grid. Throws InvalidSpecError.
GridPtr build_grid(const DomainSpec& spec);

/// One real per cell.
class CellField {
 public:
  CellField() = default;
  explicit CellField(GridPtr grid, double fill = 0.0);
  CellField(GridPtr grid, std::vector<double> values);

  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// One real per interior face; axis-0 faces first, then axis-1 faces.
class FaceField {
 public:
  FaceField() = default;
  explicit FaceField(GridPtr grid, double fill = 0.0);
  FaceField(GridPtr grid, std::vector<double> values);

  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Throws ShapeError unless both grids describe the same domain.
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where);

/// Samples f at every cell centre. For radial grids f receives (r, 0).
template <typename F>
CellField sample(const GridPtr& grid, F&& f) {
  CellField out(grid);
  for (std::size_t i = 0; i < grid->cell_count(); ++i) {
    const auto c = grid->cell_center(i);
    out[i] = f(c[0], c[1]);
  }
  return out;
}

/// (u_hi - u_lo) / h on every interior face.
FaceField forward_gradient(const CellField& u);
void forward_gradient(std::span<const double> u, const Grid& grid, std::span<double> out);

/// Negative adjoint of forward_gradient under the weighted inner products.
CellField divergence(const FaceField& p);
void divergence(std::span<const double> p, const Grid& grid, std::span<double> out);

/// Euclidean norm of each cell's gradient group, for a face field p.
CellField group_norm(const FaceField& p);
double group_norm_sq(std::span<const double> p, const Grid& grid, std::size_t cell);

double inner_product(const CellField& u, const CellField& v);
double inner_product(const FaceField& p, const FaceField& q);
double weighted_norm(const CellField& u);
double weighted_norm(const FaceField& p);
/// Volume-weighted mean.
double weighted_mean(const CellField& u);
double sup_norm(const CellField& u);
/// ||u - v|| in the cell-weighted L2 norm.
double weighted_distance(const CellField& u, const CellField& v);

}  // namespace areaflow
