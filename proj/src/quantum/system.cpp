#include "bitempo/quantum/system.hpp"

#include <cmath>
#include <string>

#include "bitempo/core/errors.hpp"

namespace bitempo::quantum {

namespace {

void check_index(const TwoTimeQuantumSystem& sys, int n, int m) {
  if (n < 0 || m < 0 || n >= sys.n_levels() || m >= sys.n_levels()) {
    throw ContractViolation("level index out of range: (" + std::to_string(n) + ", " +
                            std::to_string(m) + ") for " + std::to_string(sys.n_levels()) +
                            " levels");
  }
}

void check_hbar(double hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ContractViolation("hbar must be finite and > 0");
}

double hermitian_defect(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd diagonal(const std::vector<double>& e) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(e.size()),
                                               static_cast<Eigen::Index>(e.size()));
  for (std::size_t k = 0; k < e.size(); ++k) h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = e[k];
  return h;
}

}  // namespace

TwoTimeQuantumSystem TwoTimeQuantumSystem::make(std::vector<double> e1, std::vector<double> e2,
                                                Eigen::MatrixXcd x0, double hermitian_tol) {
  const auto n = e1.size();
  if (n < 2) throw ContractViolation("a two-time quantum system needs at least 2 levels");
  if (e2.size() != n) throw ContractViolation("spectra E1 and E2 must have equal length");
  if (x0.rows() != static_cast<Eigen::Index>(n) || x0.cols() != static_cast<Eigen::Index>(n)) {
    throw ContractViolation("observable must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(e1[k]) || !std::isfinite(e2[k])) throw ContractViolation("spectra must be finite");
  }
  if (!x0.allFinite()) throw ContractViolation("observable must be finite");
  if (hermitian_defect(x0) > hermitian_tol) throw ContractViolation("observable is not Hermitian");
  return TwoTimeQuantumSystem(std::move(e1), std::move(e2), std::move(x0));
}

SpacingPair spacing(const TwoTimeQuantumSystem& sys, int n, int m) {
  check_index(sys, n, m);
  const auto a = static_cast<std::size_t>(n);
  const auto b = static_cast<std::size_t>(m);
  return {n, m, sys.e1()[a] - sys.e1()[b], sys.e2()[a] - sys.e2()[b]};
}

double check_generator_consistency(const Eigen::MatrixXcd& h1, const Eigen::MatrixXcd& h2,
                                   double hermitian_tol) {
  if (h1.rows() != h1.cols() || h2.rows() != h2.cols() || h1.rows() != h2.rows()) {
    throw ContractViolation("generators must be square matrices of equal size");
  }
  if (hermitian_defect(h1) > hermitian_tol) throw ContractViolation("H1 is not Hermitian");
  if (hermitian_defect(h2) > hermitian_tol) throw ContractViolation("H2 is not Hermitian");
  if (h1.size() == 0) return 0.0;
  return (h1 * h2 - h2 * h1).cwiseAbs().maxCoeff();
}

Complex evolve_element(const TwoTimeQuantumSystem& sys, int n, int m, const core::TimePlanePoint& at,
                       double hbar) {
  check_hbar(hbar);
  const SpacingPair d = spacing(sys, n, m);
  const double phase = (d.d1 * at.t1 + d.d2 * at.t2) / hbar;
  return sys.x0()(n, m) * std::polar(1.0, phase);
}

Eigen::MatrixXcd evolve_observable(const TwoTimeQuantumSystem& sys, const core::TimePlanePoint& at,
                                   double hbar) {
  check_hbar(hbar);
  const int n = sys.n_levels();
  Eigen::VectorXcd phase(n);
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    phase(k) = std::polar(1.0, (sys.e1()[kk] * at.t1 + sys.e2()[kk] * at.t2) / hbar);
  }
  // X(t)_{nm} = e^{i E^n t} X0_{nm} e^{-i E^m t}
  return phase.asDiagonal() * sys.x0() * phase.conjugate().asDiagonal();
}

ElementCharacteristic element_characteristic(const TwoTimeQuantumSystem& sys, int n, int m) {
  const SpacingPair d = spacing(sys, n, m);
  ElementCharacteristic ec;
  ec.field = Eigen::Vector2d(d.d2, -d.d1);
  ec.norm = std::hypot(d.d1, d.d2);
  ec.degenerate = ec.norm == 0.0;
  ec.theta = ec.degenerate ? 0.0 : std::atan2(d.d2, d.d1);
  return ec;
}

RotatedTimes rotate_times(const ElementCharacteristic& ec, const core::TimePlanePoint& at) {
  if (ec.degenerate) throw DegeneratePointError("rotation undefined: element is degenerate in both spectra");
  const double c = std::cos(ec.theta);
  const double s = std::sin(ec.theta);
  return {c * at.t1 + s * at.t2, -s * at.t1 + c * at.t2};
}

StateVector StateVector::make(Eigen::VectorXcd psi, double norm_tol) {
  if (psi.size() == 0 || !psi.allFinite()) throw ContractViolation("state must be finite and non-empty");
  if (std::abs(psi.norm() - 1.0) > norm_tol) throw ContractViolation("state must have unit norm");
  return StateVector(std::move(psi));
}

StateVector StateVector::normalized(const Eigen::VectorXcd& psi) {
  if (psi.size() == 0 || !psi.allFinite() || psi.norm() == 0.0) {
    throw ContractViolation("cannot normalise a zero or non-finite state");
  }
  return StateVector(psi / psi.norm());
}

std::pair<Complex, Complex> moments(const TwoTimeQuantumSystem& sys, const StateVector& psi,
                                    const core::TimePlanePoint& at, double hbar) {
  if (psi.size() != sys.n_levels()) throw ContractViolation("state and system sizes differ");
  const Eigen::MatrixXcd x = evolve_observable(sys, at, hbar);
  const Eigen::VectorXcd xpsi = x * psi.psi();
  return {psi.psi().dot(xpsi), xpsi.squaredNorm()};
}

FluctuationTrace variance_trace(const TwoTimeQuantumSystem& sys, const StateVector& psi,
                                const core::Grid2T& grid, double hbar) {
  FluctuationTrace out{grid,
                       core::PlaneSamples<Complex>(grid.n1(), grid.n2()),
                       core::PlaneSamples<Complex>(grid.n1(), grid.n2()),
                       core::PlaneSamples<double>(grid.n1(), grid.n2())};
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      const auto [m1, m2] = moments(sys, psi, grid.point(i, j), hbar);
      out.mean(i, j) = m1;
      out.second_moment(i, j) = m2;
      out.variance(i, j) = m2.real() - std::norm(m1);
    }
  }
  return out;
}

Eigen::MatrixXcd acceleration_operator(const TwoTimeQuantumSystem& sys, int i, int j,
                                       const core::TimePlanePoint& at, double hbar) {
  if ((i != 1 && i != 2) || (j != 1 && j != 2)) throw ContractViolation("time indices must be 1 or 2");
  const Eigen::MatrixXcd x = evolve_observable(sys, at, hbar);
  const Eigen::MatrixXcd hi = diagonal(i == 1 ? sys.e1() : sys.e2());
  const Eigen::MatrixXcd hj = diagonal(j == 1 ? sys.e1() : sys.e2());
  const Eigen::MatrixXcd inner = x * hj - hj * x;
  return -(inner * hi - hi * inner) / (hbar * hbar);
}

Complex expected_acceleration(const TwoTimeQuantumSystem& sys, const StateVector& psi, int i, int j,
                              const core::TimePlanePoint& at, double hbar) {
  if (psi.size() != sys.n_levels()) throw ContractViolation("state and system sizes differ");
  return psi.psi().dot(acceleration_operator(sys, i, j, at, hbar) * psi.psi());
}

}  // namespace bitempo::quantum
