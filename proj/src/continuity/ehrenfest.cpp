#include "bitempo/continuity/ehrenfest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "bitempo/continuity/separability.hpp"
#include "bitempo/core/errors.hpp"

namespace bitempo::continuity {

namespace {

double evaluate(const std::function<double(double)>& f, double x) {
  if (!f) return 0.0;
  const double v = f(x);
  if (!std::isfinite(v)) throw EvaluationError("force component is not finite");
  return v;
}

double variance(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size());
}

double range(const Field3& f) {
  const auto [lo, hi] = std::minmax_element(f.data().begin(), f.data().end());
  return *hi - *lo;
}

}  // namespace

EhrenfestReport ehrenfest_limit_residual(const core::Grid2T& grid, const core::PlaneSamples<double>& x,
                                         const DiagonalForce& force, const EhrenfestOptions& options) {
  if (x.n1() != grid.n1() || x.n2() != grid.n2()) throw ContractViolation("mean samples do not match the grid");
  const SeparabilityReport sep = separability_check(x, options.separable_tol);
  EhrenfestReport r;
  r.separability_residual = sep.residual;
  if (!sep.pass) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "mean position is not separable: residual " << sep.residual;
    throw DomainError(msg.str());
  }
  r.f1_constant = range(sep.r1) <= options.constant_tol;
  r.f2_constant = range(sep.r2) <= options.constant_tol;

  const std::size_t n1 = grid.n1();
  const std::size_t n2 = grid.n2();
  const double h1 = grid.t1().step();
  const double h2 = grid.t2().step();
  for (std::size_t i = 1; i + 1 < n1; ++i) {
    for (std::size_t k = 1; k + 1 < n2; ++k) {
      const double m = (x(i + 1, k + 1) - x(i + 1, k - 1) - x(i - 1, k + 1) + x(i - 1, k - 1)) / (4.0 * h1 * h2);
      r.mixed_partial = std::max(r.mixed_partial, std::abs(m));
    }
  }

  // j = 1: for each interior t1, spread over t2 of d1^2 <x> - F11(<x>).
  std::vector<double> e;
  for (std::size_t i = 1; i + 1 < n1; ++i) {
    e.clear();
    for (std::size_t k = 0; k < n2; ++k) {
      const double d = (x(i + 1, k) - 2.0 * x(i, k) + x(i - 1, k)) / (h1 * h1);
      e.push_back(d - evaluate(force.f11, x(i, k)));
    }
    r.cross_defect_1 = std::max(r.cross_defect_1, variance(e));
  }
  for (std::size_t k = 1; k + 1 < n2; ++k) {
    e.clear();
    for (std::size_t i = 0; i < n1; ++i) {
      const double d = (x(i, k + 1) - 2.0 * x(i, k) + x(i, k - 1)) / (h2 * h2);
      e.push_back(d - evaluate(force.f22, x(i, k)));
    }
    r.cross_defect_2 = std::max(r.cross_defect_2, variance(e));
  }
  r.consistent = r.mixed_partial <= options.defect_tol && r.cross_defect_1 <= options.defect_tol &&
                 r.cross_defect_2 <= options.defect_tol;
  return r;
}

}  // namespace bitempo::continuity
