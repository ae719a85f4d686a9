#pragma once

#include <string>

#include "bitempo/core/grid.hpp"
#include "bitempo/quantum/system.hpp"

namespace bitempo::quantum {

/// Level-spacing pair, its fluctuation and a point of the time plane.
struct UncertaintyBudget {
  double dE1 = 0.0;
  double dE2 = 0.0;
  double ddE1 = 0.0;
  double ddE2 = 0.0;
  core::TimePlanePoint t;
  double hbar = 1.0;

  /// Throws ContractViolation for hbar <= 0 or non-finite entries.
  void validate() const;
};

enum class Visibility { frozen, threshold, oscillating };

std::string to_string(Visibility v);

/// Thresholds on s / (2 pi): frozen below `low`, oscillating at or above `high`.
struct VisibilityMargins {
  double low = 0.1;
  double high = 1.0;
};

struct VisibilityReport {
  /// s = |dE1 t1 + dE2 t2| / hbar.
  double phase = 0.0;
  Visibility visibility = Visibility::frozen;
};

VisibilityReport uncertainty_visibility(const UncertaintyBudget& budget,
                                        const VisibilityMargins& margins = {});

struct AngleWidth {
  double cos_phi = 1.0;
  double phi = 0.0;
  double dphi_exact = 0.0;
  double dphi_lowest_order = 0.0;
  double bound = 0.0;
  /// dphi_exact <= bound. Holds exactly when t |dE| >= sqrt(2) hbar.
  bool exact_within_bound = true;
};

/// cos(phi) = hbar / (t |dE|) and the widths derived from it. Magnitudes use
/// |dE1 ddE1 + dE2 ddE2|. Throws DomainError when t |dE| < hbar, and
/// DegeneratePointError at equality where the exact width is singular.
AngleWidth angle_and_width(const UncertaintyBudget& budget);

/// Spacing statistics of the pairs populated by a state.
struct SpacingStatistics {
  double mean_d1 = 0.0;
  double mean_d2 = 0.0;
  double std_d1 = 0.0;
  double std_d2 = 0.0;
  int pairs = 0;
};

/// Weighted mean and standard deviation of |Delta_1|, |Delta_2| over pairs
/// n > m with weight |psi_n|^2 |psi_m|^2 above `min_weight`.
SpacingStatistics spacing_statistics(const TwoTimeQuantumSystem& sys, const StateVector& psi,
                                     double min_weight = 1e-12);

/// Budget whose spacings and fluctuations come from `spacing_statistics`.
UncertaintyBudget budget_from_state(const TwoTimeQuantumSystem& sys, const StateVector& psi,
                                    const core::TimePlanePoint& t, double hbar = 1.0);

}  // namespace bitempo::quantum
