#include "areaflow/reference.hpp"

#include <algorithm>
#include <cmath>

namespace areaflow::reference {

double step_objective(std::span<const double> v, std::span<const double> u_prev, double h,
                      double tau) {
  const std::size_t n = v.size();
  double j = h;  // last cell has no upper face
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double q = (v[i + 1] - v[i]) / h;
    j += h * std::sqrt(1.0 + q * q);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double d = v[i] - u_prev[i];
    j += h * d * d / (2.0 * tau);
  }
  return j;
}

namespace {

// J(.., x, ..) - J(.., x0, ..) along coordinate i, written without cancellation so
// the golden-section comparisons stay meaningful near the minimizer.
double slice_delta(std::span<const double> v, std::span<const double> u_prev, std::size_t i,
                   double x, double x0, double h, double tau) {
  const double dx = x - x0;
  double j = h * dx * (x + x0 - 2.0 * u_prev[i]) / (2.0 * tau);
  auto edge = [&](double q, double q0, double dq) {
    return h * dq * (q + q0) / (std::sqrt(1.0 + q * q) + std::sqrt(1.0 + q0 * q0));
  };
  if (i > 0) j += edge((x - v[i - 1]) / h, (x0 - v[i - 1]) / h, dx / h);
  if (i + 1 < v.size()) j += edge((v[i + 1] - x) / h, (v[i + 1] - x0) / h, -dx / h);
  return j;
}

double golden_section(std::span<const double> v, std::span<const double> u_prev, std::size_t i,
                      double lo, double hi, double h, double tau) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double x0 = v[i];
  auto f = [&](double x) { return slice_delta(v, u_prev, i, x, x0, h, tau); };
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c >= d) break;
  }
  return 0.5 * (a + b);
}

}  // namespace

CoordinateDescentResult coordinate_descent_step(std::span<const double> u_prev, double length,
                                                double tau, double tol, int max_sweeps) {
  const std::size_t n = u_prev.size();
  const double h = length / static_cast<double>(n);
  CoordinateDescentResult out;
  out.v.assign(u_prev.begin(), u_prev.end());
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double lo = u_prev[i], hi = u_prev[i];
      if (i > 0) {
        lo = std::min(lo, out.v[i - 1]);
        hi = std::max(hi, out.v[i - 1]);
      }
      if (i + 1 < n) {
        lo = std::min(lo, out.v[i + 1]);
        hi = std::max(hi, out.v[i + 1]);
      }
      const double x = hi > lo ? golden_section(out.v, u_prev, i, lo, hi, h, tau) : lo;
      change = std::max(change, std::abs(x - out.v[i]));
      out.v[i] = x;
    }
    out.sweeps = sweep;
    out.last_change = change;
    if (change <= tol) break;
  }
  return out;
}

}  // namespace areaflow::reference
