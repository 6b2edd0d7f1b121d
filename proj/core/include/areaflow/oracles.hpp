#pragma once

namespace areaflow::oracles {

/// Two unit quarter circles on (0, 2) joined by a vertical segment of height c at x = 1.
struct QuarterCircleProfile {
  explicit QuarterCircleProfile(double c);

  double c() const noexcept { return c_; }
  /// u0(x) = sqrt(1 - x^2) + c on (0, 1), -sqrt(1 - (2 - x)^2) on (1, 2).
  double initial(double x) const;
  /// Exact solution for 0 < t < c/2: upper arc moves down, lower arc up, at unit speed.
  double solution(double t, double x) const;
  /// c / 2, the time at which the jump closes.
  double extinction_time() const noexcept { return 0.5 * c_; }

 private:
  double c_;
};

/// Radial subsolution v(t, r) = a(t) / r with a(t) = max(1 - (N - 1) t, 0).
struct RadialSubsolution {
  explicit RadialSubsolution(int dimension);

  int dimension() const noexcept { return n_; }
  /// 1 / (N - 1), the time at which a(t) vanishes.
  double sigma() const noexcept { return 1.0 / (n_ - 1); }
  double amplitude(double t) const;
  double value(double t, double r) const;
  /// v_t - div(grad v / sqrt(1 + |grad v|^2)) using the closed-form radial divergence.
  double residual(double t, double r) const;
  /// The closed-form divergence term alone.
  double divergence_term(double t, double r) const;

 private:
  int n_;
};

// Free-function forms.
double example1_initial(double c, double x);
double example1_solution(double c, double t, double x);
double example1_extinction_time(double c);
double example2_subsolution(int dimension, double t, double r);
double subsolution_residual(int dimension, double t, double r);

}  // namespace areaflow::oracles
