#pragma once

#include <Eigen/Dense>

#include "bitempo/classical/force.hpp"
#include "bitempo/core/grid.hpp"

namespace bitempo::classical {

/// The four slopes F'_{jk} = dF_{jk}/dx of a one-dimensional force.
struct ForceSlopes {
  double f11 = 0.0;
  double f12 = 0.0;
  double f21 = 0.0;
  double f22 = 0.0;
};

ForceSlopes force_slopes_1d(const ForceTensorField& force, double x,
                            const core::Tolerances& tol = {});

/// |F'_11 F'_22 - F'_12 F'_21|. Zero is necessary for two-time motion.
///
/// The gauge connection is accepted for interface symmetry with the orbit
/// relation; the condition itself involves only the force slopes.
double consistency_residual_1d(const ForceTensorField& force, const GaugeConnection& gauge,
                               double x, const core::Tolerances& tol = {});

/// Orbit relation: Phi(x) = F'_11 F'_12 / (F'_21 F'_22) against the squared
/// momentum ratio ((p1 - A1) / (p2 - A2))^2.
struct OrbitRelation {
  double phi = 0.0;
  double ratio_squared = 0.0;
  double residual = 0.0;
};

/// Throws DegeneratePointError naming the vanishing factor when F'_21,
/// F'_22 or p2 - A2 is zero (within tol.abs_tol).
OrbitRelation orbit_relation_1d(const ForceTensorField& force, const GaugeConnection& gauge,
                                double x, const VelocityPair& p,
                                const core::Tolerances& tol = {});

/// Characteristic direction (sqrt(F'_22 F'_21), -sqrt(F'_11 F'_12)).
struct CharacteristicVector {
  Eigen::Vector2d value = Eigen::Vector2d::Zero();
  bool degenerate = false;
};

/// Radicands within tol.abs_tol of zero are treated as zero; a clearly
/// negative radicand throws ComplexCharacteristicError.
CharacteristicVector characteristic_field_1d(const ForceTensorField& force, double x,
                                             const core::Tolerances& tol = {});

}  // namespace bitempo::classical
