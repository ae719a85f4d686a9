#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace bitempo::core {

/// A point (t1, t2) of the time plane.
struct TimePlanePoint {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// One uniform axis: `count` samples from `min` to `max` inclusive.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 3;

  double step() const { return (max - min) / static_cast<double>(count - 1); }
  double at(std::size_t i) const { return min + step() * static_cast<double>(i); }
  std::vector<double> samples() const;
};

/// Uniform grid over the time plane, optionally extended by one space axis.
///
/// Every axis needs max > min and at least 3 samples so that central
/// differences have interior points. Construct through `Grid2T::make` to get
/// those checks.
class Grid2T {
 public:
  static Grid2T make(Axis t1, Axis t2, std::optional<Axis> space = std::nullopt);

  const Axis& t1() const { return t1_; }
  const Axis& t2() const { return t2_; }
  bool has_space() const { return space_.has_value(); }
  const Axis& space() const;

  std::size_t n1() const { return t1_.count; }
  std::size_t n2() const { return t2_.count; }
  std::size_t nx() const { return space_ ? space_->count : 1; }

  TimePlanePoint point(std::size_t i1, std::size_t i2) const {
    return {t1_.at(i1), t2_.at(i2)};
  }

 private:
  Grid2T(Axis t1, Axis t2, std::optional<Axis> space)
      : t1_(t1), t2_(t2), space_(space) {}

  Axis t1_;
  Axis t2_;
  std::optional<Axis> space_;
};

/// Finite-difference step and the absolute/relative tolerances used by checks.
struct Tolerances {
  double fd_step = 1e-5;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;

  /// Throws ContractViolation unless every field is finite and positive.
  void validate() const;
};

/// Row-major samples over the (t1, t2) plane of a Grid2T.
template <typename T>
class PlaneSamples {
 public:
  PlaneSamples() = default;
  PlaneSamples(std::size_t n1, std::size_t n2, T fill = T{})
      : n1_(n1), n2_(n2), data_(n1 * n2, fill) {}

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  T& operator()(std::size_t i1, std::size_t i2) { return data_[i1 * n2_ + i2]; }
  const T& operator()(std::size_t i1, std::size_t i2) const { return data_[i1 * n2_ + i2]; }
  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::vector<T> data_;
};

}  // namespace bitempo::core
