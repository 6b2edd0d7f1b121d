#include "areaflow/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "areaflow/errors.hpp"

namespace areaflow::oracles {

QuarterCircleProfile::QuarterCircleProfile(double c) : c_(c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("QuarterCircleProfile: c must be positive");
}

double QuarterCircleProfile::initial(double x) const {
  if (!(x > 0.0 && x < 2.0) || x == 1.0) {
    std::ostringstream os;
    os << "example1_initial: x = " << x << " outside (0, 1) U (1, 2)";
    throw DomainError(os.str());
  }
  if (x < 1.0) return std::sqrt(1.0 - x * x) + c_;
  const double y = 2.0 - x;
  return -std::sqrt(1.0 - y * y);
}

double QuarterCircleProfile::solution(double t, double x) const {
  if (!(t > 0.0 && t < 0.5 * c_)) {
    std::ostringstream os;
    os << "example1_solution: t = " << t << " outside (0, c/2) = (0, " << 0.5 * c_ << ")";
    throw DomainError(os.str());
  }
  if (!(x > 0.0 && x < 2.0) || x == 1.0) {
    std::ostringstream os;
    os << "example1_solution: x = " << x << " outside (0, 1) U (1, 2)";
    throw DomainError(os.str());
  }
  if (x < 1.0) return -t + std::sqrt(1.0 - x * x) + c_;
  const double y = 2.0 - x;
  return t - std::sqrt(1.0 - y * y);
}

RadialSubsolution::RadialSubsolution(int dimension) : n_(dimension) {
  if (dimension < 2) throw DomainError("RadialSubsolution: dimension must be >= 2");
}

double RadialSubsolution::amplitude(double t) const { return std::max(1.0 - (n_ - 1) * t, 0.0); }

double RadialSubsolution::value(double t, double r) const {
  if (!(r > 0.0)) throw DomainError("example2_subsolution: r must be positive");
  return amplitude(t) / r;
}

namespace {

void require_smooth_branch(const RadialSubsolution& v, double t, double r) {
  if (!(r > 0.0)) throw DomainError("subsolution_residual: r must be positive");
  if (!(t > 0.0 && t < v.sigma())) {
    std::ostringstream os;
    os << "subsolution_residual: t = " << t << " outside (0, 1/(N-1)) = (0, " << v.sigma()
       << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

double RadialSubsolution::divergence_term(double t, double r) const {
  require_smooth_branch(*this, t, r);
  const double a = amplitude(t);
  const double q = a * a + r * r * r * r;
  return -a * ((n_ - 3) / r / std::sqrt(q) + (2.0 / r) * a * a / (q * std::sqrt(q)));
}

double RadialSubsolution::residual(double t, double r) const {
  // v_t = a'(t) / r with a' = -(N - 1) on the smooth branch.
  const double vt = -(n_ - 1) / r;
  return vt - divergence_term(t, r);
}

double example1_initial(double c, double x) { return QuarterCircleProfile(c).initial(x); }

double example1_solution(double c, double t, double x) {
  return QuarterCircleProfile(c).solution(t, x);
}

double example1_extinction_time(double c) {
  if (!(c > 0.0)) throw DomainError("example1_extinction_time: c must be positive");
  return 0.5 * c;
}

double example2_subsolution(int dimension, double t, double r) {
  return RadialSubsolution(dimension).value(t, r);
}

double subsolution_residual(int dimension, double t, double r) {
  return RadialSubsolution(dimension).residual(t, r);
}

}  // namespace areaflow::oracles
