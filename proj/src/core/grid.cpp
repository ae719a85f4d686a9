#include "bitempo/core/grid.hpp"

#include <cmath>
#include <string>

#include "bitempo/core/errors.hpp"

namespace bitempo::core {

namespace {

void check_axis(const Axis& axis, const char* name) {
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
    throw ContractViolation(std::string("grid axis ") + name + " has non-finite bounds");
  }
  if (!(axis.max > axis.min)) {
    throw ContractViolation(std::string("grid axis ") + name + " needs max > min");
  }
  if (axis.count < 3) {
    throw ContractViolation(std::string("grid axis ") + name +
                            " needs at least 3 samples, got " + std::to_string(axis.count));
  }
}

}  // namespace

std::vector<double> Axis::samples() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = at(i);
  return out;
}

Grid2T Grid2T::make(Axis t1, Axis t2, std::optional<Axis> space) {
  check_axis(t1, "t1");
  check_axis(t2, "t2");
  if (space) check_axis(*space, "x");
  return Grid2T(t1, t2, space);
}

const Axis& Grid2T::space() const {
  if (!space_) throw ContractViolation("grid has no space axis");
  return *space_;
}

void Tolerances::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(fd_step)) throw ContractViolation("fd_step must be finite and > 0");
  if (!positive(abs_tol)) throw ContractViolation("abs_tol must be finite and > 0");
  if (!positive(rel_tol)) throw ContractViolation("rel_tol must be finite and > 0");
}

}  // namespace bitempo::core
