#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bitempo/core/grid.hpp"

namespace bitempo::classical {

/// Spatial position with d <= 3 components.
using Position = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;

/// Value of F^i_{jk} at one point. `component[i](j, k)` is zero-based: i is
/// the space index, j and k the two time indices.
struct ForceTensor {
  int dim = 1;
  std::array<Eigen::Matrix2d, 3> component{Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero(),
                                           Eigen::Matrix2d::Zero()};

  double operator()(int i, int j, int k) const { return component[i](j, k); }
};

/// Autonomous force law x -> F^i_{jk}(x). The map never sees t1 or t2.
class ForceTensorField {
 public:
  using Map = std::function<ForceTensor(const Position&)>;

  ForceTensorField(int dim, Map eval, bool symmetric = true, std::string name = "custom");

  int dim() const { return dim_; }
  bool symmetric() const { return symmetric_; }
  const std::string& name() const { return name_; }

  /// Evaluates the force, checking dimension and finiteness.
  ForceTensor operator()(const Position& x) const;

  /// Same field multiplied by a constant.
  ForceTensorField scaled(double factor) const;

 private:
  int dim_;
  Map eval_;
  bool symmetric_;
  std::string name_;
};

/// Derivatives d F^i_{jk} / d x^m. `d[i][m](j, k)`.
struct ForceGradient {
  int dim = 1;
  std::array<std::array<Eigen::Matrix2d, 3>, 3> d{};

  /// F^i_{jk,m} with zero-based indices.
  double operator()(int i, int j, int k, int m) const { return d[i][m](j, k); }
};

/// Central-difference gradient of the force at x. The step for axis m is
/// tol.fd_step * max(1, |x^m|).
ForceGradient force_gradient(const ForceTensorField& force, const Position& x,
                             const core::Tolerances& tol = {});

/// max_i |F^i_{12} - F^i_{21}|: the antisymmetric part, which must vanish
/// for symmetric forces without a gauge connection.
double antisymmetric_defect(const ForceTensorField& force, const Position& x);

/// Samples `samples` for the symmetry claim of a symmetric-flagged field.
/// Returns the largest antisymmetric defect seen.
double check_symmetry(const ForceTensorField& force, const std::vector<Position>& samples);

/// Gauge connection (A_1, A_2) as a function of position; one space dimension only.
class GaugeConnection {
 public:
  using Map = std::function<Eigen::Vector2d(double)>;

  GaugeConnection();  // A = 0
  explicit GaugeConnection(Map eval);

  Eigen::Vector2d operator()(double x) const;

 private:
  Map eval_;
};

/// Momenta p^i_j: row i is the space index, column j the time index.
struct VelocityPair {
  Eigen::Matrix<double, Eigen::Dynamic, 2, 0, 3, 2> p;

  static VelocityPair one_dim(double p1, double p2) {
    VelocityPair v;
    v.p.resize(1, 2);
    v.p << p1, p2;
    return v;
  }
};

// ---------------------------------------------------------------------------
// Force families

/// F ≡ 0 in d dimensions.
ForceTensorField zero_force(int dim);

/// F^i_{jk}(x) = c_j c_k G^i(x). The constructive witnesses of two-time motion.
ForceTensorField rank_one_force(int dim, const Eigen::Vector2d& c,
                                std::function<Position(const Position&)> potential);

/// Polynomial coefficients of one tensor entry: a0 + a1.x + x^T a2 x.
struct PolynomialEntry {
  double constant = 0.0;
  Eigen::Vector3d linear = Eigen::Vector3d::Zero();
  Eigen::Matrix3d quadratic = Eigen::Matrix3d::Zero();

  double operator()(const Position& x) const;
};

/// Force whose every entry is a quadratic polynomial in position.
/// `entries[i][j][k]`; symmetric fields copy (j, k) to (k, j) on construction.
struct PolynomialForceSpec {
  int dim = 1;
  bool symmetric = true;
  std::array<std::array<std::array<PolynomialEntry, 2>, 2>, 3> entries{};
};

ForceTensorField polynomial_force(const PolynomialForceSpec& spec, std::string name = "polynomial");

/// Random coefficients uniform in [-1, 1], deterministic for a given seed.
/// degree 1 drops the quadratic part.
PolynomialForceSpec random_polynomial_spec(int dim, std::uint64_t seed, int degree = 2,
                                           bool symmetric = true);

}  // namespace bitempo::classical
