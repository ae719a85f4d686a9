#pragma once

#include <array>

#include <Eigen/Dense>

#include "bitempo/core/linalg.hpp"

namespace bitempo::dirac {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Spinor = Eigen::Vector2cd;
/// Components (t1, t2, x); for momenta the covariant (k1, k2, k3).
using Vec3 = Eigen::Vector3d;

/// gamma_1 = sigma_1, gamma_2 = sigma_2, gamma_3 = i sigma_3 with metric diag(+, +, -).
struct GammaSet {
  std::array<Matrix2c, 3> g;
  std::array<double, 3> metric{1.0, 1.0, -1.0};
};

GammaSet gamma_set();

/// max over mu, nu and entries of |{g_mu, g_nu} - 2 g_{mu nu} 1|.
double clifford_defect(const GammaSet& gs);

/// gamma_mu k^mu = g1 k1 + g2 k2 - g3 k3 for covariant k.
Matrix2c slash(const Vec3& k);

/// k1^2 + k2^2 - k3^2.
double minkowski_square(const Vec3& k);

/// Plane-wave form of the effective Hamiltonian,
/// H(k2, k3) = k2 g1 g2 - k3 g1 g3 + m g1.
Matrix2c effective_hamiltonian(double k2, double k3, double m);

/// max entry of |H - H^dag|. Only the g1 g2 term is anti-Hermitian, so this
/// equals 2 |k2|.
double hermiticity_defect(double k2, double k3, double m);

}  // namespace bitempo::dirac
