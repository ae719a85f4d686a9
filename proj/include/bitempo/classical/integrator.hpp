#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bitempo/core/grid.hpp"

namespace bitempo::classical {

struct IntegratorOptions {
  /// Accept a step once halving it moves every sample by less than
  /// rel_tol * max(1, max |x|).
  double rel_tol = 1e-10;
  /// |X| beyond this bound aborts with TruncationError.
  double blowup_bound = 1e8;
  int initial_steps = 64;
  int max_halvings = 16;
};

/// Dense solution of X''(s) = g(X) on uniform nodes, interpolated with cubic
/// Hermite polynomials. Lifts to the time plane through s = c1 t1 + c2 t2.
class RankOneSolution {
 public:
  RankOneSolution() = default;
  RankOneSolution(Eigen::Vector2d c, double s_first, double step, std::vector<double> position,
                  std::vector<double> velocity, std::vector<double> acceleration);

  double position(double s) const;
  double velocity(double s) const;

  double s_of(const core::TimePlanePoint& t) const { return c_(0) * t.t1 + c_(1) * t.t2; }
  double x(const core::TimePlanePoint& t) const { return position(s_of(t)); }
  /// p_j = dx/dt_j = c_j X'(s).
  Eigen::Vector2d momenta(const core::TimePlanePoint& t) const { return c_ * velocity(s_of(t)); }

  const Eigen::Vector2d& c() const { return c_; }
  double step() const { return step_; }
  double s_min() const { return s_first_; }
  double s_max() const { return s_first_ + step_ * static_cast<double>(position_.size() - 1); }

 private:
  std::size_t interval(double s) const;

  Eigen::Vector2d c_ = Eigen::Vector2d::Zero();
  double s_first_ = 0.0;
  double step_ = 1.0;
  std::vector<double> position_;
  std::vector<double> velocity_;
  std::vector<double> acceleration_;
};

/// Surface x(t1, t2) and momenta sampled on a grid, plus the dense solution.
struct RankOneSurface {
  core::Grid2T grid;
  RankOneSolution solution;
  core::PlaneSamples<double> x;
  core::PlaneSamples<double> p1;
  core::PlaneSamples<double> p2;
  bool converged = false;
  int halvings = 0;
};

/// Reference two-time trajectory of the rank-one force F_jk = c_j c_k g(x):
/// solves X'' = g(X), X(0) = x0, X'(0) = v0 with classical RK4 and samples
/// x(t1, t2) = X(c1 t1 + c2 t2) on the grid.
RankOneSurface integrate_rank_one_1d(const std::function<double(double)>& g,
                                     const Eigen::Vector2d& c, double x0, double v0,
                                     const core::Grid2T& grid, const IntegratorOptions& options = {});

}  // namespace bitempo::classical
