#include "bitempo/dirac/mode_mass.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bitempo/core/errors.hpp"

namespace bitempo::dirac {

ModeMass effective_mode_mass(double m, double omega, double hbar, double c) {
  if (!(m >= 0.0) || !(omega >= 0.0) || !(hbar > 0.0) || !(c > 0.0) || !std::isfinite(m) ||
      !std::isfinite(omega) || !std::isfinite(hbar) || !std::isfinite(c)) {
    throw ContractViolation("mode mass needs finite m >= 0, omega >= 0, hbar > 0, c > 0");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  ModeMass r;
  r.m = m;
  r.omega = omega;
  const double shift = hbar * omega / (c * c);
  r.m_eff_squared = (m - shift) * (m + shift);
  r.tachyonic = r.m_eff_squared < 0.0;
  r.m_eff = r.tachyonic ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(r.m_eff_squared);
  r.tau = omega == 0.0 ? inf : 2.0 * std::numbers::pi / omega;
  r.R = m == 0.0 ? inf : hbar / (m * c);
  r.tachyonic_by_length = c * r.tau < r.R;
  r.classification_agrees = r.tachyonic == r.tachyonic_by_length;
  return r;
}

}  // namespace bitempo::dirac
