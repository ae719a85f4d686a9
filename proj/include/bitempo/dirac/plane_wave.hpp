#pragma once

#include <optional>
#include <vector>

#include "bitempo/continuity/charges.hpp"
#include "bitempo/continuity/field.hpp"
#include "bitempo/continuity/separability.hpp"
#include "bitempo/core/grid.hpp"
#include "bitempo/dirac/gamma.hpp"

namespace bitempo::dirac {

/// Psi(x) = e^{i k.x} psi_plus + e^{-i k.x} psi_minus with k.x = k1 t1 + k2 t2 + k3 x.
struct PlaneWaveSolution {
  Vec3 k = Vec3::Zero();
  double m = 0.0;
  Spinor psi_plus = Spinor::Zero();
  Spinor psi_minus = Spinor::Zero();

  /// Copy with psi_minus multiplied by scale e^{i phase}.
  PlaneWaveSolution with_minus(double scale, double phase) const;
  Spinor at(const Vec3& x) const;
};

/// (-slash(k) - m) for the plus branch, (slash(k) - m) for the minus branch.
Matrix2c branch_operator(const Vec3& k, double m, int sign);

/// Both on-shell branches, each a unit spinor with its first nonzero
/// component real and positive. Throws DomainError when
/// |k^2 - m^2| >= tol max(1, m^2) and DegeneratePointError when a kernel is
/// not one-dimensional.
PlaneWaveSolution solve_plane_wave(const Vec3& k, double m, double tol = 1e-10);

/// max |op psi| over the two branches.
double kernel_residual(const PlaneWaveSolution& sol);

/// Q_mu = i Psi^dag(-x) g3 g_mu Psi(x), conserved for mu = 1, 2, 3.
Eigen::Vector3cd raw_current(const PlaneWaveSolution& sol, const Vec3& x);

enum class CurrentPart { imaginary, real };

/// Im Q (cos 2k.x modulation, the default) or Re Q (sin 2k.x modulation).
Vec3 dirac_current(const PlaneWaveSolution& sol, const Vec3& x, CurrentPart part = CurrentPart::imaginary);

/// Coefficients of the cos 2k.x expansion of Im Q. With
/// P = C+^2* C+^1, N = C-^2* C-^1, U = C+^2* C-^1, V = C-^2* C+^1:
///   j1 = 2 cos(2k.x) Im(P + N) + 2 Im(U + V)
///   j2 = 2 cos(2k.x) Re(P + N) + 2 Re(U + V)
///   j3 = -cos(2k.x) (|psi+|^2 + |psi-|^2) - 2 Re(psi+^dag psi-)
struct CurrentExpansion {
  Complex diagonal;  // P + N
  Complex cross;     // U + V
  double norm_sum = 0.0;
  double overlap = 0.0;

  Vec3 at_phase(double kx) const;
};

CurrentExpansion current_expansion(const PlaneWaveSolution& sol);

/// max over sample points of |d1 j1 + d2 j2 - dx j3| using central
/// differences of the given step in each coordinate.
double conservation_residual(const PlaneWaveSolution& sol, const core::Grid2T& grid, double step = 1e-4,
                             CurrentPart part = CurrentPart::imaginary);

/// Current sampled on a grid with space axis, jx = j3.
continuity::CurrentField sample_current(const PlaneWaveSolution& sol, const core::Grid2T& grid,
                                        CurrentPart part = CurrentPart::imaginary);

struct PositivityReport {
  double lhs_im = 0.0;  // |Im(P + N)|
  double rhs_im = 0.0;  // |Im(U + V)|
  double lhs_re = 0.0;  // |Re(P + N)|
  double rhs_re = 0.0;  // |Re(U + V)|
  bool holds_im = false;
  bool holds_re = false;
  bool holds() const { return holds_im && holds_re; }
  /// Sampled minima of j1, j2 after orienting each by the sign of its
  /// constant term (currents are defined up to a sign).
  double min_j1 = 0.0;
  double min_j2 = 0.0;
  double min_density_sampled = 0.0;
  Vec3 witness = Vec3::Zero();
};

/// Printed inequalities plus a grid sampler; points span t1, t2 and the
/// space axis when present (x = 0 otherwise).
PositivityReport positivity_check(const PlaneWaveSolution& sol, const core::Grid2T& grid);

/// min(rhs_im - lhs_im, rhs_re - lhs_re); positive iff both hold strictly.
double positivity_margin(const PlaneWaveSolution& sol);

struct PositivitySearch {
  PlaneWaveSolution solution;
  double scale = 1.0;
  double phase = 0.0;
  double margin = 0.0;
};

/// Scans psi_minus -> scale e^{i phase} psi_minus over scale in [1e-2, 1e2]
/// (log spaced) and phase in [0, 2 pi), keeping the largest margin when
/// `maximize` and the smallest otherwise.
PositivitySearch search_positivity(const PlaneWaveSolution& base, bool maximize, int scale_steps = 81,
                                   int phase_steps = 72);

struct DensitySeparabilityReport {
  /// rho(x, t1, t2) = alpha int dt2 j1 + beta int dt1 j2.
  continuity::Field3 rho;
  continuity::SeparabilityReport separability;
  /// P(t1, t2) = int dx rho.
  core::PlaneSamples<double> P;
  continuity::SeparabilityReport P_separability;
  continuity::ChargeReport charges;
};

DensitySeparabilityReport dirac_density_separability(const PlaneWaveSolution& sol, const core::Grid2T& grid,
                                                     double alpha = 1.0, double beta = 1.0);

}  // namespace bitempo::dirac
