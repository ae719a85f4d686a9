#pragma once

#include <cstddef>
#include <vector>

#include "bitempo/core/grid.hpp"

namespace bitempo::continuity {

/// Real samples over (x, t1, t2), x-major then t1 then t2.
class Field3 {
 public:
  Field3() = default;
  Field3(std::size_t nx, std::size_t n1, std::size_t n2, double fill = 0.0)
      : nx_(nx), n1_(n1), n2_(n2), data_(nx * n1 * n2, fill) {}

  /// Zero field shaped like `grid`; nx = 1 when the grid has no space axis.
  static Field3 shaped_like(const core::Grid2T& grid);

  std::size_t nx() const { return nx_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }

  double& operator()(std::size_t ix, std::size_t i1, std::size_t i2) {
    return data_[(ix * n1_ + i1) * n2_ + i2];
  }
  double operator()(std::size_t ix, std::size_t i1, std::size_t i2) const {
    return data_[(ix * n1_ + i1) * n2_ + i2];
  }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool all_finite() const;
  bool same_shape(const Field3& other) const {
    return nx_ == other.nx_ && n1_ == other.n1_ && n2_ == other.n2_;
  }

 private:
  std::size_t nx_ = 0;
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::vector<double> data_;
};

/// Two time components and one spatial component of a current on a grid.
///
/// Conservation reads d1 j1 + d2 j2 - dx jx = 0 in the (+, +, -) metric.
struct CurrentField {
  core::Grid2T grid;
  Field3 j1;
  Field3 j2;
  Field3 jx;

  /// Throws ContractViolation unless the grid has a space axis, every
  /// component matches its shape and all samples are finite.
  void validate() const;
};

/// Composite trapezoid over uniformly spaced samples.
double trapezoid(const std::vector<double>& values, double step);

/// Derivative samples: central differences inside, second-order one-sided at
/// the two ends. Needs at least 3 samples.
std::vector<double> derivative(const std::vector<double>& values, double step);

}  // namespace bitempo::continuity
