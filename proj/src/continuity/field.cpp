#include "bitempo/continuity/field.hpp"

#include <algorithm>
#include <cmath>

#include "bitempo/core/errors.hpp"

namespace bitempo::continuity {

Field3 Field3::shaped_like(const core::Grid2T& grid) {
  return Field3(grid.nx(), grid.n1(), grid.n2());
}

bool Field3::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void CurrentField::validate() const {
  if (!grid.has_space()) throw ContractViolation("a current field needs a grid with a space axis");
  const Field3 shape = Field3::shaped_like(grid);
  for (const Field3* f : {&j1, &j2, &jx}) {
    if (!f->same_shape(shape)) throw ContractViolation("current component shape does not match the grid");
    if (!f->all_finite()) throw ContractViolation("current samples must be finite");
  }
}

double trapezoid(const std::vector<double>& values, double step) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) sum += values[k];
  return sum * step;
}

std::vector<double> derivative(const std::vector<double>& values, double step) {
  const std::size_t n = values.size();
  if (n < 3) throw ContractViolation("derivative needs at least 3 samples");
  std::vector<double> d(n);
  d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * step);
  d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * step);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (values[k + 1] - values[k - 1]) / (2.0 * step);
  return d;
}

}  // namespace bitempo::continuity
