#include "bitempo/dirac/gamma.hpp"

#include <algorithm>

namespace bitempo::dirac {

GammaSet gamma_set() {
  const Complex i(0.0, 1.0);
  GammaSet gs;
  gs.g[0] << 0.0, 1.0, 1.0, 0.0;
  gs.g[1] << 0.0, -i, i, 0.0;
  gs.g[2] << i, 0.0, 0.0, -i;
  return gs;
}

double clifford_defect(const GammaSet& gs) {
  double worst = 0.0;
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      Matrix2c expected = Matrix2c::Zero();
      if (mu == nu) expected = 2.0 * gs.metric[static_cast<std::size_t>(mu)] * Matrix2c::Identity();
      const auto& a = gs.g[static_cast<std::size_t>(mu)];
      const auto& b = gs.g[static_cast<std::size_t>(nu)];
      const Matrix2c anti = a * b + b * a;
      worst = std::max(worst, (anti - expected).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Matrix2c slash(const Vec3& k) {
  const GammaSet gs = gamma_set();
  return gs.g[0] * k(0) + gs.g[1] * k(1) - gs.g[2] * k(2);
}

double minkowski_square(const Vec3& k) { return k(0) * k(0) + k(1) * k(1) - k(2) * k(2); }

Matrix2c effective_hamiltonian(double k2, double k3, double m) {
  const GammaSet gs = gamma_set();
  return k2 * (gs.g[0] * gs.g[1]) - k3 * (gs.g[0] * gs.g[2]) + m * gs.g[0];
}

double hermiticity_defect(double k2, double k3, double m) {
  const Matrix2c h = effective_hamiltonian(k2, k3, m);
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace bitempo::dirac
