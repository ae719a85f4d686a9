#include "bitempo/continuity/charges.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bitempo/core/errors.hpp"

namespace bitempo::continuity {

namespace {

// int dx dt_other of one component at a fixed index along its own time axis.
double slice_integral(const Field3& f, const core::Grid2T& g, bool over_t2, std::size_t fixed) {
  const std::size_t n_other = over_t2 ? g.n2() : g.n1();
  const double h_other = over_t2 ? g.t2().step() : g.t1().step();
  std::vector<double> inner(n_other);
  std::vector<double> outer(g.nx());
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    for (std::size_t k = 0; k < n_other; ++k) inner[k] = over_t2 ? f(ix, fixed, k) : f(ix, k, fixed);
    outer[ix] = trapezoid(inner, h_other);
  }
  return trapezoid(outer, g.space().step());
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string leak_message(int charge, double flux) {
  std::ostringstream msg;
  msg.precision(6);
  msg << "Q" << charge << ": boundary flux " << flux << " does not vanish";
  return msg.str();
}

}  // namespace

ChargeReport charges(const CurrentField& j, double alpha, double beta, const core::Tolerances& tol) {
  j.validate();
  tol.validate();
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ContractViolation("alpha and beta must be finite");
  const core::Grid2T& g = j.grid;

  ChargeReport r;
  r.Q1.resize(g.n1());
  r.Q2.resize(g.n2());
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1) r.Q1[i1] = slice_integral(j.j1, g, true, i1);
  for (std::size_t i2 = 0; i2 < g.n2(); ++i2) r.Q2[i2] = slice_integral(j.j2, g, false, i2);
  r.dQ1 = derivative(r.Q1, g.t1().step());
  r.dQ2 = derivative(r.Q2, g.t2().step());
  r.dQ1_residual = max_abs(r.dQ1);
  r.dQ2_residual = max_abs(r.dQ2);

  // Q1 is bounded by the t2 ends (flux j2) and the x ends (flux jx);
  // Q2 by the t1 ends (flux j1) and the x ends.
  const std::size_t lx = g.nx() - 1;
  const std::size_t l1 = g.n1() - 1;
  const std::size_t l2 = g.n2() - 1;
  double space_flux = 0.0;
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
    for (std::size_t i2 = 0; i2 < g.n2(); ++i2) {
      space_flux = std::max({space_flux, std::abs(j.jx(0, i1, i2)), std::abs(j.jx(lx, i1, i2))});
    }
  }
  r.boundary_flux_1 = space_flux;
  r.boundary_flux_2 = space_flux;
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
      r.boundary_flux_1 = std::max({r.boundary_flux_1, std::abs(j.j2(ix, i1, 0)), std::abs(j.j2(ix, i1, l2))});
    }
    for (std::size_t i2 = 0; i2 < g.n2(); ++i2) {
      r.boundary_flux_2 = std::max({r.boundary_flux_2, std::abs(j.j1(ix, 0, i2)), std::abs(j.j1(ix, l1, i2))});
    }
  }
  if (r.boundary_flux_1 > tol.abs_tol) r.warnings.push_back(leak_message(1, r.boundary_flux_1));
  if (r.boundary_flux_2 > tol.abs_tol) r.warnings.push_back(leak_message(2, r.boundary_flux_2));

  const double q0 = alpha * r.Q1.front() + beta * r.Q2.front();
  if (std::abs(q0) > tol.abs_tol) {
    r.alpha = alpha / q0;
    r.beta = beta / q0;
  } else {
    r.alpha = alpha;
    r.beta = beta;
    r.warnings.push_back("total charge vanishes at the initial slice; alpha, beta not rescaled");
  }
  r.Q_total = core::PlaneSamples<double>(g.n1(), g.n2());
  for (std::size_t i1 = 0; i1 < g.n1(); ++i1) {
    for (std::size_t i2 = 0; i2 < g.n2(); ++i2) r.Q_total(i1, i2) = r.alpha * r.Q1[i1] + r.beta * r.Q2[i2];
  }
  return r;
}

}  // namespace bitempo::continuity
