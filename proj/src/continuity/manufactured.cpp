#include "bitempo/continuity/manufactured.hpp"

#include <cmath>

#include "bitempo/core/errors.hpp"

namespace bitempo::continuity {

namespace {

struct Bump {
  double value;
  double slope;  // d/dt, already divided by the axis length
};

Bump bump(const core::Axis& axis, double t) {
  const double len = axis.max - axis.min;
  const double z = (t - axis.min) / len;
  const double e = std::exp(z);
  return {z * (1.0 - z) * e, e * (1.0 - z - z * z) / len};
}

}  // namespace

CurrentField manufactured_current(const core::Grid2T& grid, const ManufacturedCurrent& spec) {
  if (!grid.has_space()) throw ContractViolation("manufactured current needs a grid with a space axis");
  CurrentField j{grid, Field3::shaped_like(grid), Field3::shaped_like(grid), Field3::shaped_like(grid)};
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
    const double x = grid.space().at(ix);
    const Bump vx = bump(grid.space(), x);
    const double p = 1.0 + 0.5 * std::sin(x);
    const double f = 1.0 + 0.25 * x + 0.5 * std::cos(x);
    for (std::size_t i1 = 0; i1 < grid.n1(); ++i1) {
      const double t1 = grid.t1().at(i1);
      const Bump v1 = bump(grid.t1(), t1);
      for (std::size_t i2 = 0; i2 < grid.n2(); ++i2) {
        const double t2 = grid.t2().at(i2);
        const Bump v2 = bump(grid.t2(), t2);
        const double s = std::cos(t2);
        const double fg = f * std::exp(0.5 * t2);
        j.j1(ix, i1, i2) = spec.a * p * v2.slope * v1.value + spec.b * vx.slope * s * v1.value +
                           (spec.charge + spec.source * (t1 - grid.t1().min)) * fg;
        j.j2(ix, i1, i2) = -spec.a * p * v2.value * v1.slope;
        j.jx(ix, i1, i2) = spec.b * vx.value * s * v1.slope;
      }
    }
  }
  return j;
}

}  // namespace bitempo::continuity
