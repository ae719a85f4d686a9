#pragma once

namespace bitempo::dirac {

/// Extra-time mode of a scalar field: m_eff^2 = m^2 - (hbar omega / c^2)^2.
struct ModeMass {
  double m = 0.0;
  double omega = 0.0;
  double m_eff_squared = 0.0;
  /// sqrt(m_eff_squared) when non-negative, NaN otherwise.
  double m_eff = 0.0;
  bool tachyonic = false;
  /// 2 pi / omega; infinite at omega = 0.
  double tau = 0.0;
  /// hbar / (m c); infinite at m = 0.
  double R = 0.0;
  /// c tau < R.
  bool tachyonic_by_length = false;
  /// tachyonic == tachyonic_by_length. Fails on mc^2/hbar < omega < 2 pi mc^2/hbar.
  bool classification_agrees = true;
};

/// Throws ContractViolation unless m >= 0, omega >= 0, hbar > 0 and c > 0.
ModeMass effective_mode_mass(double m, double omega, double hbar = 1.0, double c = 1.0);

}  // namespace bitempo::dirac
