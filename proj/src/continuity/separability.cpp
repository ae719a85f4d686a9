#include "bitempo/continuity/separability.hpp"

#include <cmath>
#include <sstream>

#include "bitempo/core/errors.hpp"

namespace bitempo::continuity {

namespace {

constexpr int max_sweeps = 100;

}  // namespace

SeparabilityReport separability_check(const Field3& rho, double tol) {
  if (!rho.all_finite()) throw ContractViolation("density samples must be finite");
  const std::size_t nx = rho.nx();
  const std::size_t n1 = rho.n1();
  const std::size_t n2 = rho.n2();
  SeparabilityReport r;
  r.r1 = Field3(nx, n1, 1);
  r.r2 = Field3(nx, 1, n2);
  if (rho.data().empty()) return r;

  // Each sweep projects the remainder onto functions of (x, t1), then of
  // (x, t2). Stops once a sweep no longer changes the fit.
  for (r.sweeps = 1; r.sweeps <= max_sweeps; ++r.sweeps) {
    double change = 0.0;
    double scale = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      for (std::size_t i1 = 0; i1 < n1; ++i1) {
        double s = 0.0;
        for (std::size_t i2 = 0; i2 < n2; ++i2) s += rho(ix, i1, i2) - r.r2(ix, 0, i2);
        const double v = s / static_cast<double>(n2);
        change = std::max(change, std::abs(v - r.r1(ix, i1, 0)));
        scale = std::max(scale, std::abs(v));
        r.r1(ix, i1, 0) = v;
      }
      for (std::size_t i2 = 0; i2 < n2; ++i2) {
        double s = 0.0;
        for (std::size_t i1 = 0; i1 < n1; ++i1) s += rho(ix, i1, i2) - r.r1(ix, i1, 0);
        const double v = s / static_cast<double>(n1);
        change = std::max(change, std::abs(v - r.r2(ix, 0, i2)));
        scale = std::max(scale, std::abs(v));
        r.r2(ix, 0, i2) = v;
      }
    }
    if (change <= 1e-15 * std::max(1.0, scale)) break;
  }
  r.sweeps = std::min(r.sweeps, max_sweeps);

  double res2 = 0.0;
  double norm2 = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      for (std::size_t i2 = 0; i2 < n2; ++i2) {
        const double e = rho(ix, i1, i2) - r.r1(ix, i1, 0) - r.r2(ix, 0, i2);
        res2 += e * e;
        norm2 += rho(ix, i1, i2) * rho(ix, i1, i2);
      }
    }
  }
  r.absolute_residual = std::sqrt(res2);
  r.residual = norm2 > 0.0 ? std::sqrt(res2 / norm2) : 0.0;
  r.pass = r.residual < tol;
  return r;
}

SeparabilityReport separability_check(const core::PlaneSamples<double>& f, double tol) {
  Field3 rho(1, f.n1(), f.n2());
  rho.data() = f.data();
  return separability_check(rho, tol);
}

AverageReport separable_average(const core::Grid2T& grid, const Field3& rho,
                                const std::function<double(double)>& a, double norm_tol, double fit_tol) {
  if (!grid.has_space()) throw ContractViolation("separable_average needs a grid with a space axis");
  if (!rho.same_shape(Field3::shaped_like(grid))) throw ContractViolation("density shape does not match the grid");
  if (!rho.all_finite()) throw ContractViolation("density samples must be finite");
  if (!a) throw ContractViolation("observable map is empty");

  const std::vector<double> xs = grid.space().samples();
  std::vector<double> ax(xs.size());
  for (std::size_t ix = 0; ix < xs.size(); ++ix) {
    ax[ix] = a(xs[ix]);
    if (!std::isfinite(ax[ix])) throw EvaluationError("observable is not finite on the space axis");
  }

  AverageReport out;
  out.mean = core::PlaneSamples<double>(grid.n1(), grid.n2());
  std::vector<double> weight(xs.size());
  std::vector<double> weighted(xs.size());
  std::size_t worst1 = 0;
  std::size_t worst2 = 0;
  double worst_norm = 1.0;
  const double h = grid.space().step();
  for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) {
    for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) {
      for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        weight[ix] = rho(ix, i1, i2);
        weighted[ix] = ax[ix] * weight[ix];
      }
      const double norm = trapezoid(weight, h);
      if (std::abs(norm - 1.0) > out.normalization_defect) {
        out.normalization_defect = std::abs(norm - 1.0);
        worst1 = i1;
        worst2 = i2;
        worst_norm = norm;
      }
      out.mean(i1, i2) = trapezoid(weighted, h);
    }
  }
  if (out.normalization_defect > norm_tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density not normalised: int dx rho = " << worst_norm << " at slice (t1, t2) = ("
        << grid.t1().at(worst1) << ", " << grid.t2().at(worst2) << ")";
    throw DomainError(msg.str());
  }
  out.separability = separability_check(out.mean, fit_tol);
  return out;
}

}  // namespace bitempo::continuity
