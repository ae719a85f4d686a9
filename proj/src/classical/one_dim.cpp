#include "bitempo/classical/one_dim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bitempo/core/errors.hpp"

namespace bitempo::classical {

namespace {

void require_one_dim(const ForceTensorField& force) {
  if (force.dim() != 1) {
    throw ContractViolation("one-dimensional operation called with a d=" +
                            std::to_string(force.dim()) + " force");
  }
}

double slope_scale(const ForceSlopes& s) {
  return std::max({1.0, std::abs(s.f11), std::abs(s.f12), std::abs(s.f21), std::abs(s.f22)});
}

}  // namespace

ForceSlopes force_slopes_1d(const ForceTensorField& force, double x,
                            const core::Tolerances& tol) {
  require_one_dim(force);
  Position at(1);
  at << x;
  const ForceGradient g = force_gradient(force, at, tol);
  return {g(0, 0, 0, 0), g(0, 0, 1, 0), g(0, 1, 0, 0), g(0, 1, 1, 0)};
}

double consistency_residual_1d(const ForceTensorField& force, const GaugeConnection& gauge,
                               double x, const core::Tolerances& tol) {
  (void)gauge(x);
  const ForceSlopes s = force_slopes_1d(force, x, tol);
  return std::abs(s.f11 * s.f22 - s.f12 * s.f21);
}

OrbitRelation orbit_relation_1d(const ForceTensorField& force, const GaugeConnection& gauge,
                                double x, const VelocityPair& p, const core::Tolerances& tol) {
  if (p.p.rows() != 1) throw ContractViolation("orbit relation needs a d=1 velocity pair");
  const ForceSlopes s = force_slopes_1d(force, x, tol);
  const double zero = tol.abs_tol * slope_scale(s);
  if (std::abs(s.f21) <= zero) throw DegeneratePointError("orbit relation undefined: F'_21 vanishes");
  if (std::abs(s.f22) <= zero) throw DegeneratePointError("orbit relation undefined: F'_22 vanishes");

  const Eigen::Vector2d a = gauge(x);
  const double num = p.p(0, 0) - a(0);
  const double den = p.p(0, 1) - a(1);
  if (std::abs(den) <= tol.abs_tol * std::max(1.0, std::abs(num))) {
    throw DegeneratePointError("orbit relation undefined: p2 - A2 vanishes");
  }
  OrbitRelation out;
  out.phi = (s.f11 * s.f12) / (s.f21 * s.f22);
  out.ratio_squared = (num / den) * (num / den);
  out.residual = std::abs(out.ratio_squared - out.phi);
  return out;
}

CharacteristicVector characteristic_field_1d(const ForceTensorField& force, double x,
                                             const core::Tolerances& tol) {
  const ForceSlopes s = force_slopes_1d(force, x, tol);
  const double scale = slope_scale(s);
  const double zero = tol.abs_tol * scale * scale;
  double first = s.f22 * s.f21;
  double second = s.f11 * s.f12;
  for (double* r : {&first, &second}) {
    if (*r < -zero) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "complex characteristic at x=" << x << ": radicand " << *r << " < 0";
      throw ComplexCharacteristicError(msg.str());
    }
    if (*r < 0.0) *r = 0.0;
  }
  CharacteristicVector out;
  out.value << std::sqrt(first), -std::sqrt(second);
  out.degenerate = first <= zero && second <= zero;
  return out;
}

}  // namespace bitempo::classical
