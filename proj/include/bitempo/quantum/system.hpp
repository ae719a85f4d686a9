#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bitempo/core/grid.hpp"

namespace bitempo::quantum {

using Complex = std::complex<double>;

/// Two commuting generators given by their spectra in a shared eigenbasis,
/// plus the observable x^{nm}(0) = <n|x|m> in that basis.
class TwoTimeQuantumSystem {
 public:
  /// Checks sizes, finiteness, n >= 2 and Hermiticity of X0 within
  /// `hermitian_tol` (entrywise).
  static TwoTimeQuantumSystem make(std::vector<double> e1, std::vector<double> e2,
                                   Eigen::MatrixXcd x0, double hermitian_tol = 1e-12);

  int n_levels() const { return static_cast<int>(e1_.size()); }
  const std::vector<double>& e1() const { return e1_; }
  const std::vector<double>& e2() const { return e2_; }
  const Eigen::MatrixXcd& x0() const { return x0_; }

 private:
  TwoTimeQuantumSystem(std::vector<double> e1, std::vector<double> e2, Eigen::MatrixXcd x0)
      : e1_(std::move(e1)), e2_(std::move(e2)), x0_(std::move(x0)) {}

  std::vector<double> e1_;
  std::vector<double> e2_;
  Eigen::MatrixXcd x0_;
};

/// Delta^{nm}_i = E_i^n - E_i^m.
struct SpacingPair {
  int n = 0;
  int m = 0;
  double d1 = 0.0;
  double d2 = 0.0;
};

SpacingPair spacing(const TwoTimeQuantumSystem& sys, int n, int m);

/// max |[H1, H2]_{ab}|. Throws ContractViolation for mismatched sizes or
/// non-Hermitian input (entrywise tolerance `hermitian_tol`).
double check_generator_consistency(const Eigen::MatrixXcd& h1, const Eigen::MatrixXcd& h2,
                                   double hermitian_tol = 1e-12);

/// x^{nm}(t1, t2) = x^{nm}(0) exp(i (Delta_1 t1 + Delta_2 t2) / hbar).
Complex evolve_element(const TwoTimeQuantumSystem& sys, int n, int m,
                       const core::TimePlanePoint& at, double hbar = 1.0);

/// Whole Heisenberg-picture observable at (t1, t2).
Eigen::MatrixXcd evolve_observable(const TwoTimeQuantumSystem& sys, const core::TimePlanePoint& at,
                                   double hbar = 1.0);

/// Per-element field (Delta_2, -Delta_1), its norm and rotation angle.
struct ElementCharacteristic {
  Eigen::Vector2d field = Eigen::Vector2d::Zero();
  double norm = 0.0;
  double theta = 0.0;
  bool degenerate = true;
};

ElementCharacteristic element_characteristic(const TwoTimeQuantumSystem& sys, int n, int m);

struct RotatedTimes {
  double tau1 = 0.0;
  double tau2 = 0.0;
};

/// tau1 = cos(theta) t1 + sin(theta) t2, tau2 = -sin(theta) t1 + cos(theta) t2.
/// Throws DegeneratePointError for a degenerate characteristic.
RotatedTimes rotate_times(const ElementCharacteristic& ec, const core::TimePlanePoint& at);

/// Unit-norm state in the shared eigenbasis.
class StateVector {
 public:
  /// Throws ContractViolation unless |psi| = 1 within `norm_tol`.
  static StateVector make(Eigen::VectorXcd psi, double norm_tol = 1e-12);
  /// Normalises a non-zero vector.
  static StateVector normalized(const Eigen::VectorXcd& psi);

  const Eigen::VectorXcd& psi() const { return psi_; }
  int size() const { return static_cast<int>(psi_.size()); }

 private:
  explicit StateVector(Eigen::VectorXcd psi) : psi_(std::move(psi)) {}
  Eigen::VectorXcd psi_;
};

/// <x>, <x^2> and the variance <x^2> - <x>^2 sampled on the time plane.
struct FluctuationTrace {
  core::Grid2T grid;
  core::PlaneSamples<Complex> mean;
  core::PlaneSamples<Complex> second_moment;
  core::PlaneSamples<double> variance;
};

/// Moments at one point: <x> = psi^dag X(t) psi and <x^2> = psi^dag X(t)^2 psi.
std::pair<Complex, Complex> moments(const TwoTimeQuantumSystem& sys, const StateVector& psi,
                                    const core::TimePlanePoint& at, double hbar = 1.0);

FluctuationTrace variance_trace(const TwoTimeQuantumSystem& sys, const StateVector& psi,
                                const core::Grid2T& grid, double hbar = 1.0);

/// F_ij(t) = -(1/hbar^2) [[x(t), H_j], H_i], built from explicit commutators.
/// Indices i, j are 1 or 2.
Eigen::MatrixXcd acceleration_operator(const TwoTimeQuantumSystem& sys, int i, int j,
                                       const core::TimePlanePoint& at, double hbar = 1.0);

/// <F_ij> in the state psi at (t1, t2).
Complex expected_acceleration(const TwoTimeQuantumSystem& sys, const StateVector& psi, int i, int j,
                              const core::TimePlanePoint& at, double hbar = 1.0);

}  // namespace bitempo::quantum
