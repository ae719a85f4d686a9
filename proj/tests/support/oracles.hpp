#pragma once

// Independent reference computations used only by tests. None of these call
// into the library code they are meant to check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cd = std::complex<double>;

/// Laplace expansion along the first row. Exponential cost; n <= 8.
template <typename Matrix>
auto cofactor_determinant(const Matrix& m) -> typename Matrix::Scalar {
  using Scalar = typename Matrix::Scalar;
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Scalar sum = Scalar(0);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index c2 = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == col) continue;
        minor(r - 1, c2++) = m(r, c);
      }
    }
    const Scalar sign = (col % 2 == 0) ? Scalar(1) : Scalar(-1);
    sum += sign * m(0, col) * cofactor_determinant(minor);
  }
  return sum;
}

/// Random unitary from the QR factorization of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

/// Dense two-generator evolution |psi(t1,t2)> = exp(-i(H1 t1 + H2 t2)/hbar)|psi>
/// via the matrix exponential of the full generator.
inline Eigen::VectorXcd evolve_state(const Eigen::MatrixXcd& h1, const Eigen::MatrixXcd& h2,
                                     const Eigen::VectorXcd& psi, double t1, double t2,
                                     double hbar) {
  const Eigen::MatrixXcd gen = cd(0.0, -1.0 / hbar) * (h1 * t1 + h2 * t2);
  const Eigen::MatrixXcd u = gen.exp();
  return u * psi;
}

/// Moments <x> and <x^2> of a state for a dense observable.
inline std::pair<cd, cd> moments(const Eigen::MatrixXcd& x, const Eigen::VectorXcd& psi) {
  const cd m1 = psi.dot(x * psi);
  const cd m2 = psi.dot(x * (x * psi));
  return {m1, m2};
}

/// Trapezoid rule on a uniform grid.
inline double trapezoid(const std::vector<double>& f, double h) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

}  // namespace oracle
