#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include "bitempo/core/errors.hpp"

namespace bitempo::core {

namespace detail {

template <typename T>
bool all_finite(const T& value) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::isfinite(value);
  } else {
    return value.allFinite();
  }
}

template <typename T>
void require_finite(const T& value, double at) {
  if (!all_finite(value)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "non-finite value at " << at;
    throw EvaluationError(msg.str());
  }
}

}  // namespace detail

/// Default step for an argument of magnitude |at|: 1e-5 times max(1, |at|).
inline double default_step(double at, double relative = 1e-5) {
  return relative * std::max(1.0, std::abs(at));
}

/// Second-order central difference (f(at+h) - f(at-h)) / 2h.
///
/// Works for scalar maps and for maps returning Eigen vectors/matrices, in
/// which case every entry is differentiated.
template <typename F>
auto central_difference(F&& f, double at, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ContractViolation("central_difference needs a finite step > 0");
  }
  const double hi = at + step;
  const double lo = at - step;
  const auto f_hi = f(hi);
  detail::require_finite(f_hi, hi);
  const auto f_lo = f(lo);
  detail::require_finite(f_lo, lo);
  using Result = std::decay_t<decltype(f_hi)>;
  if constexpr (std::is_arithmetic_v<Result>) {
    return (f_hi - f_lo) / (2.0 * step);
  } else {
    Result out = (f_hi - f_lo) / (2.0 * step);
    return out;
  }
}

/// Second-order central second difference (f(at+h) - 2 f(at) + f(at-h)) / h^2.
template <typename F>
auto central_second_difference(F&& f, double at, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ContractViolation("central_second_difference needs a finite step > 0");
  }
  const auto f_hi = f(at + step);
  detail::require_finite(f_hi, at + step);
  const auto f_mid = f(at);
  detail::require_finite(f_mid, at);
  const auto f_lo = f(at - step);
  detail::require_finite(f_lo, at - step);
  return (f_hi - 2.0 * f_mid + f_lo) / (step * step);
}

}  // namespace bitempo::core
