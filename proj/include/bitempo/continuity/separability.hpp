#pragma once

#include <functional>

#include "bitempo/continuity/field.hpp"
#include "bitempo/core/grid.hpp"

namespace bitempo::continuity {

struct SeparabilityReport {
  /// ||rho - r1 - r2|| / ||rho||, 0 for a vanishing rho.
  double residual = 0.0;
  /// ||rho - r1 - r2|| in the sample 2-norm.
  double absolute_residual = 0.0;
  bool pass = true;
  int sweeps = 0;
  /// Fitted parts; r1(x, t1) lives in r1(ix, i1, 0), r2(x, t2) in r2(ix, 0, i2).
  Field3 r1;
  Field3 r2;
};

/// Least-squares fit rho(x, t1, t2) ~ r1(x, t1) + r2(x, t2) by alternating
/// projections (at most 100 sweeps). Passes iff residual < tol.
SeparabilityReport separability_check(const Field3& rho, double tol = 1e-10);

/// Same fit for samples over the time plane only: f ~ f1(t1) + f2(t2).
SeparabilityReport separability_check(const core::PlaneSamples<double>& f, double tol = 1e-10);

struct AverageReport {
  core::PlaneSamples<double> mean;
  SeparabilityReport separability;
  /// max |int dx rho - 1| over the time slices.
  double normalization_defect = 0.0;
};

/// <A>(t1, t2) = int dx A(x) rho by trapezoid, and the separability of <A>.
/// Throws DomainError naming the worst slice when some slice is not
/// normalised within norm_tol.
AverageReport separable_average(const core::Grid2T& grid, const Field3& rho,
                                const std::function<double(double)>& a, double norm_tol = 1e-8,
                                double fit_tol = 1e-8);

}  // namespace bitempo::continuity
