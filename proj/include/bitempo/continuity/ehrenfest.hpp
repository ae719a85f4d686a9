#pragma once

#include <functional>

#include "bitempo/core/grid.hpp"

namespace bitempo::continuity {

/// Autonomous diagonal force components F_11(x), F_22(x). An empty map is zero.
struct DiagonalForce {
  std::function<double(double)> f11;
  std::function<double(double)> f22;
};

struct EhrenfestOptions {
  /// Relative separability residual allowed for the input.
  double separable_tol = 1e-8;
  /// Range below which a fitted f_j counts as constant.
  double constant_tol = 1e-8;
  /// Threshold for mixed partial and cross-dependence defects.
  double defect_tol = 1e-6;
};

struct EhrenfestReport {
  double separability_residual = 0.0;
  /// max |d1 d2 <x>| over interior points.
  double mixed_partial = 0.0;
  /// Per j: max over t_j of the variance over t_k of d_j^2 <x> - F_jj(<x>).
  double cross_defect_1 = 0.0;
  double cross_defect_2 = 0.0;
  bool f1_constant = false;
  bool f2_constant = false;
  /// Mixed partial and both defects below defect_tol.
  bool consistent = false;
};

/// Ehrenfest-limit residuals of a mean position sampled on the time plane.
/// Derivatives are grid central differences at interior points. Throws
/// DomainError when the input is not separable.
EhrenfestReport ehrenfest_limit_residual(const core::Grid2T& grid, const core::PlaneSamples<double>& mean_x,
                                         const DiagonalForce& force, const EhrenfestOptions& options = {});

}  // namespace bitempo::continuity
