#pragma once

#include <string>
#include <vector>

#include "bitempo/continuity/field.hpp"
#include "bitempo/core/grid.hpp"

namespace bitempo::continuity {

struct ChargeReport {
  /// Q1(t1) = int dt2 dx j1 and Q2(t2) = int dt1 dx j2.
  std::vector<double> Q1;
  std::vector<double> Q2;
  std::vector<double> dQ1;
  std::vector<double> dQ2;
  double dQ1_residual = 0.0;
  double dQ2_residual = 0.0;
  /// Rescaled so that Q_total = 1 at (t1, t2) = (min, min) when possible.
  double alpha = 1.0;
  double beta = 1.0;
  core::PlaneSamples<double> Q_total;
  /// Largest |flux| on the surfaces bounding each charge's integration volume.
  double boundary_flux_1 = 0.0;
  double boundary_flux_2 = 0.0;
  std::vector<std::string> warnings;
};

/// Charges of a current by composite trapezoid. Non-vanishing boundary flux
/// (above tol.abs_tol) is reported as a warning, never thrown.
ChargeReport charges(const CurrentField& j, double alpha = 1.0, double beta = 1.0,
                     const core::Tolerances& tol = {});

}  // namespace bitempo::continuity
