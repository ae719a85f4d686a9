#include "bitempo/dirac/plane_wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bitempo/core/errors.hpp"

namespace bitempo::dirac {

namespace {

double phase_of(const Vec3& k, const Vec3& x) { return k(0) * x(0) + k(1) * x(1) + k(2) * x(2); }

Spinor gauge_fixed(const Spinor& v) {
  Spinor out = v / v.norm();
  for (int c = 0; c < 2; ++c) {
    const double a = std::abs(out(c));
    if (a > 1e-12) {
      out *= std::conj(out(c)) / a;
      out(c) = a;
      break;
    }
  }
  return out;
}

Spinor branch_kernel(const Vec3& k, double m, int sign, double tol) {
  core::ComplexMatrix op = branch_operator(k, m, sign);
  core::Tolerances kt;
  kt.abs_tol = std::max(1e-10, 10.0 * tol);
  const auto kernel = core::null_space(op, kt);
  if (kernel.size() != 1) {
    std::ostringstream msg;
    msg << (sign > 0 ? "plus" : "minus") << " branch kernel has dimension " << kernel.size() << ", expected 1";
    throw DegeneratePointError(msg.str());
  }
  return gauge_fixed(Spinor(kernel[0](0), kernel[0](1)));
}

std::vector<Vec3> sample_points(const core::Grid2T& grid) {
  std::vector<Vec3> pts;
  pts.reserve(grid.n1() * grid.n2() * grid.nx());
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
    const double x = grid.has_space() ? grid.space().at(ix) : 0.0;
    for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) {
      for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) pts.emplace_back(grid.t1().at(i1), grid.t2().at(i2), x);
    }
  }
  return pts;
}

}  // namespace

PlaneWaveSolution PlaneWaveSolution::with_minus(double scale, double phase) const {
  PlaneWaveSolution out = *this;
  out.psi_minus *= std::polar(scale, phase);
  return out;
}

Spinor PlaneWaveSolution::at(const Vec3& x) const {
  const double ph = phase_of(k, x);
  return std::polar(1.0, ph) * psi_plus + std::polar(1.0, -ph) * psi_minus;
}

Matrix2c branch_operator(const Vec3& k, double m, int sign) {
  const Matrix2c s = slash(k);
  return (sign > 0 ? Matrix2c(-s) : s) - m * Matrix2c::Identity();
}

PlaneWaveSolution solve_plane_wave(const Vec3& k, double m, double tol) {
  if (!k.allFinite() || !std::isfinite(m) || m < 0.0) throw ContractViolation("k must be finite and m >= 0");
  if (!(tol > 0.0)) throw ContractViolation("on-shell tolerance must be > 0");
  const double off = minkowski_square(k) - m * m;
  if (!(std::abs(off) < tol * std::max(1.0, m * m))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "off-shell wavevector: k1^2 + k2^2 - k3^2 - m^2 = " << off;
    throw DomainError(msg.str());
  }
  PlaneWaveSolution sol;
  sol.k = k;
  sol.m = m;
  sol.psi_plus = branch_kernel(k, m, +1, tol);
  sol.psi_minus = branch_kernel(k, m, -1, tol);
  return sol;
}

double kernel_residual(const PlaneWaveSolution& sol) {
  const double a = (branch_operator(sol.k, sol.m, +1) * sol.psi_plus).norm();
  const double b = (branch_operator(sol.k, sol.m, -1) * sol.psi_minus).norm();
  return std::max(a, b);
}

Eigen::Vector3cd raw_current(const PlaneWaveSolution& sol, const Vec3& x) {
  const GammaSet gs = gamma_set();
  const Spinor here = sol.at(x);
  const Eigen::RowVector2cd mirrored = sol.at(-x).adjoint() * gs.g[2];
  Eigen::Vector3cd q;
  for (int mu = 0; mu < 3; ++mu) {
    q(mu) = Complex(0.0, 1.0) * (mirrored * gs.g[static_cast<std::size_t>(mu)] * here)(0, 0);
  }
  return q;
}

Vec3 dirac_current(const PlaneWaveSolution& sol, const Vec3& x, CurrentPart part) {
  const Eigen::Vector3cd q = raw_current(sol, x);
  return part == CurrentPart::imaginary ? Vec3(q.imag()) : Vec3(q.real());
}

Vec3 CurrentExpansion::at_phase(double kx) const {
  const double c = std::cos(2.0 * kx);
  return {2.0 * c * diagonal.imag() + 2.0 * cross.imag(), 2.0 * c * diagonal.real() + 2.0 * cross.real(),
          -(c * norm_sum + 2.0 * overlap)};
}

CurrentExpansion current_expansion(const PlaneWaveSolution& sol) {
  const Spinor& a = sol.psi_plus;
  const Spinor& b = sol.psi_minus;
  CurrentExpansion e;
  e.diagonal = std::conj(a(1)) * a(0) + std::conj(b(1)) * b(0);
  e.cross = std::conj(a(1)) * b(0) + std::conj(b(1)) * a(0);
  e.norm_sum = a.squaredNorm() + b.squaredNorm();
  e.overlap = a.dot(b).real();
  return e;
}

double conservation_residual(const PlaneWaveSolution& sol, const core::Grid2T& grid, double step,
                             CurrentPart part) {
  if (!(step > 0.0)) throw ContractViolation("finite-difference step must be > 0");
  double worst = 0.0;
  for (const Vec3& p : sample_points(grid)) {
    double div = 0.0;
    for (int mu = 0; mu < 3; ++mu) {
      Vec3 lo = p;
      Vec3 hi = p;
      lo(mu) -= step;
      hi(mu) += step;
      const double d = (dirac_current(sol, hi, part)(mu) - dirac_current(sol, lo, part)(mu)) / (2.0 * step);
      div += (mu == 2 ? -d : d);
    }
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

continuity::CurrentField sample_current(const PlaneWaveSolution& sol, const core::Grid2T& grid,
                                        CurrentPart part) {
  if (!grid.has_space()) throw ContractViolation("sampling a current needs a grid with a space axis");
  using continuity::Field3;
  continuity::CurrentField j{grid, Field3::shaped_like(grid), Field3::shaped_like(grid), Field3::shaped_like(grid)};
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
    for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) {
      for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) {
        const Vec3 c = dirac_current(sol, Vec3(grid.t1().at(i1), grid.t2().at(i2), grid.space().at(ix)), part);
        j.j1(ix, i1, i2) = c(0);
        j.j2(ix, i1, i2) = c(1);
        j.jx(ix, i1, i2) = c(2);
      }
    }
  }
  return j;
}

double positivity_margin(const PlaneWaveSolution& sol) {
  const CurrentExpansion e = current_expansion(sol);
  return std::min(std::abs(e.cross.imag()) - std::abs(e.diagonal.imag()),
                  std::abs(e.cross.real()) - std::abs(e.diagonal.real()));
}

PositivityReport positivity_check(const PlaneWaveSolution& sol, const core::Grid2T& grid) {
  const CurrentExpansion e = current_expansion(sol);
  PositivityReport r;
  r.lhs_im = std::abs(e.diagonal.imag());
  r.rhs_im = std::abs(e.cross.imag());
  r.lhs_re = std::abs(e.diagonal.real());
  r.rhs_re = std::abs(e.cross.real());
  r.holds_im = r.lhs_im <= r.rhs_im;
  r.holds_re = r.lhs_re <= r.rhs_re;

  const double s1 = e.cross.imag() < 0.0 ? -1.0 : 1.0;
  const double s2 = e.cross.real() < 0.0 ? -1.0 : 1.0;
  r.min_j1 = std::numeric_limits<double>::infinity();
  r.min_j2 = std::numeric_limits<double>::infinity();
  r.min_density_sampled = std::numeric_limits<double>::infinity();
  for (const Vec3& p : sample_points(grid)) {
    const Vec3 j = dirac_current(sol, p);
    const double a = s1 * j(0);
    const double b = s2 * j(1);
    r.min_j1 = std::min(r.min_j1, a);
    r.min_j2 = std::min(r.min_j2, b);
    if (std::min(a, b) < r.min_density_sampled) {
      r.min_density_sampled = std::min(a, b);
      r.witness = p;
    }
  }
  return r;
}

PositivitySearch search_positivity(const PlaneWaveSolution& base, bool maximize, int scale_steps,
                                   int phase_steps) {
  if (scale_steps < 2 || phase_steps < 1) throw ContractViolation("search needs >= 2 scales and >= 1 phase");
  PositivitySearch best;
  bool first = true;
  for (int s = 0; s < scale_steps; ++s) {
    const double scale = std::pow(10.0, -2.0 + 4.0 * s / (scale_steps - 1));
    for (int p = 0; p < phase_steps; ++p) {
      const double phase = 2.0 * std::numbers::pi * p / phase_steps;
      const PlaneWaveSolution trial = base.with_minus(scale, phase);
      const double margin = positivity_margin(trial);
      if (first || (maximize ? margin > best.margin : margin < best.margin)) {
        best = {trial, scale, phase, margin};
        first = false;
      }
    }
  }
  return best;
}

DensitySeparabilityReport dirac_density_separability(const PlaneWaveSolution& sol, const core::Grid2T& grid,
                                                     double alpha, double beta) {
  const continuity::CurrentField j = sample_current(sol, grid);
  DensitySeparabilityReport r;
  r.rho = continuity::Field3::shaped_like(grid);
  std::vector<double> along2(grid.n2());
  std::vector<double> along1(grid.n1());
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
    std::vector<double> rho1(grid.n1());
    std::vector<double> rho2(grid.n2());
    for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) {
      for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) along2[i2] = j.j1(ix, i1, i2);
      rho1[i1] = continuity::trapezoid(along2, grid.t2().step());
    }
    for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) {
      for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) along1[i1] = j.j2(ix, i1, i2);
      rho2[i2] = continuity::trapezoid(along1, grid.t1().step());
    }
    for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) {
      for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) r.rho(ix, i1, i2) = alpha * rho1[i1] + beta * rho2[i2];
    }
  }
  r.separability = continuity::separability_check(r.rho, 1e-8);

  r.P = core::PlaneSamples<double>(grid.n1(), grid.n2());
  std::vector<double> along_x(grid.nx());
  for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) {
    for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) {
      for (std::size_t ix = 0; ix < grid.nx(); ++ix) along_x[ix] = r.rho(ix, i1, i2);
      r.P(i1, i2) = continuity::trapezoid(along_x, grid.space().step());
    }
  }
  r.P_separability = continuity::separability_check(r.P, 1e-8);
  r.charges = continuity::charges(j, alpha, beta);
  return r;
}

}  // namespace bitempo::dirac
