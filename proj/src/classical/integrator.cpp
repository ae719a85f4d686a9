#include "bitempo/classical/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "bitempo/core/errors.hpp"

namespace bitempo::classical {

RankOneSolution::RankOneSolution(Eigen::Vector2d c, double s_first, double step,
                                 std::vector<double> position, std::vector<double> velocity,
                                 std::vector<double> acceleration)
    : c_(std::move(c)),
      s_first_(s_first),
      step_(step),
      position_(std::move(position)),
      velocity_(std::move(velocity)),
      acceleration_(std::move(acceleration)) {}

std::size_t RankOneSolution::interval(double s) const {
  if (position_.size() < 2) throw ContractViolation("trajectory has no nodes");
  const double u = (s - s_first_) / step_;
  const double last = static_cast<double>(position_.size() - 2);
  if (u < -1e-9 || u > last + 1.0 + 1e-9) {
    throw ContractViolation("s outside the integrated range");
  }
  return static_cast<std::size_t>(std::clamp(std::floor(u), 0.0, last));
}

double RankOneSolution::position(double s) const {
  const std::size_t k = interval(s);
  const double h = step_;
  const double u = (s - (s_first_ + h * static_cast<double>(k))) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * position_[k] + h10 * h * velocity_[k] + h01 * position_[k + 1] +
         h11 * h * velocity_[k + 1];
}

double RankOneSolution::velocity(double s) const {
  const std::size_t k = interval(s);
  const double h = step_;
  const double u = (s - (s_first_ + h * static_cast<double>(k))) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * velocity_[k] + h10 * h * acceleration_[k] + h01 * velocity_[k + 1] +
         h11 * h * acceleration_[k + 1];
}

namespace {

struct State {
  double x;
  double v;
};

State rk4_step(const std::function<double(double)>& g, State y, double h) {
  const State k1{y.v, g(y.x)};
  const State m1{y.x + 0.5 * h * k1.x, y.v + 0.5 * h * k1.v};
  const State k2{m1.v, g(m1.x)};
  const State m2{y.x + 0.5 * h * k2.x, y.v + 0.5 * h * k2.v};
  const State k3{m2.v, g(m2.x)};
  const State m3{y.x + h * k3.x, y.v + h * k3.v};
  const State k4{m3.v, g(m3.x)};
  return {y.x + h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
          y.v + h / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

RankOneSolution solve(const std::function<double(double)>& g, const Eigen::Vector2d& c,
                      double x0, double v0, double s_lo, double s_hi, double h,
                      const IntegratorOptions& options) {
  const auto n_back = static_cast<std::size_t>(std::ceil(-s_lo / h - 1e-12));
  const auto n_fwd = static_cast<std::size_t>(std::ceil(s_hi / h - 1e-12));
  const std::size_t n = n_back + n_fwd + 1;
  std::vector<double> xs(n), vs(n), as(n);

  auto store = [&](std::size_t k, State y, double s) {
    if (!std::isfinite(y.x) || !std::isfinite(y.v) || std::abs(y.x) > options.blowup_bound) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "trajectory left |X| <= " << options.blowup_bound << " near s=" << s;
      throw TruncationError(msg.str(), s);
    }
    xs[k] = y.x;
    vs[k] = y.v;
    as[k] = g(y.x);
  };

  store(n_back, {x0, v0}, 0.0);
  State y{x0, v0};
  for (std::size_t k = n_back + 1; k < n; ++k) {
    const double s_prev = h * static_cast<double>(k - 1 - n_back);
    try {
      y = rk4_step(g, y, h);
      store(k, y, s_prev + h);
    } catch (const TruncationError&) {
      throw TruncationError("trajectory blew up after s=" + std::to_string(s_prev), s_prev);
    }
  }
  y = {x0, v0};
  for (std::size_t k = n_back; k-- > 0;) {
    const double s_prev = -h * static_cast<double>(n_back - k - 1);
    try {
      y = rk4_step(g, y, -h);
      store(k, y, s_prev - h);
    } catch (const TruncationError&) {
      throw TruncationError("trajectory blew up before s=" + std::to_string(s_prev), s_prev);
    }
  }
  return RankOneSolution(c, -h * static_cast<double>(n_back), h, std::move(xs), std::move(vs),
                         std::move(as));
}

void sample(RankOneSurface& surface) {
  const auto& grid = surface.grid;
  surface.x = core::PlaneSamples<double>(grid.n1(), grid.n2());
  surface.p1 = core::PlaneSamples<double>(grid.n1(), grid.n2());
  surface.p2 = core::PlaneSamples<double>(grid.n1(), grid.n2());
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      const auto t = grid.point(i, j);
      surface.x(i, j) = surface.solution.x(t);
      const Eigen::Vector2d p = surface.solution.momenta(t);
      surface.p1(i, j) = p(0);
      surface.p2(i, j) = p(1);
    }
  }
}

}  // namespace

RankOneSurface integrate_rank_one_1d(const std::function<double(double)>& g,
                                     const Eigen::Vector2d& c, double x0, double v0,
                                     const core::Grid2T& grid, const IntegratorOptions& options) {
  if (!g) throw ContractViolation("integrator needs g(x)");
  if (!c.allFinite() || c.norm() == 0.0) throw ContractViolation("direction c must be finite and nonzero");
  if (!std::isfinite(x0) || !std::isfinite(v0)) throw ContractViolation("initial data must be finite");

  double s_lo = 0.0;
  double s_hi = 0.0;
  for (double t1 : {grid.t1().min, grid.t1().max}) {
    for (double t2 : {grid.t2().min, grid.t2().max}) {
      const double s = c(0) * t1 + c(1) * t2;
      s_lo = std::min(s_lo, s);
      s_hi = std::max(s_hi, s);
    }
  }
  const double span = std::max(s_hi - s_lo, 1e-12);
  double h = span / static_cast<double>(std::max(options.initial_steps, 1));

  RankOneSurface current{grid, solve(g, c, x0, v0, s_lo, s_hi, h, options), {}, {}, {}, false, 0};
  sample(current);
  for (int halving = 1; halving <= options.max_halvings; ++halving) {
    h *= 0.5;
    RankOneSurface finer{grid, solve(g, c, x0, v0, s_lo, s_hi, h, options), {}, {}, {}, false,
                         halving};
    sample(finer);
    double change = 0.0;
    double scale = 1.0;
    for (std::size_t k = 0; k < finer.x.data().size(); ++k) {
      change = std::max(change, std::abs(finer.x.data()[k] - current.x.data()[k]));
      scale = std::max(scale, std::abs(finer.x.data()[k]));
    }
    current = std::move(finer);
    if (change < options.rel_tol * scale) {
      current.converged = true;
      break;
    }
  }
  return current;
}

}  // namespace bitempo::classical
