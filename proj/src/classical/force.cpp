#include "bitempo/classical/force.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "bitempo/core/errors.hpp"
#include "bitempo/core/finite_difference.hpp"

namespace bitempo::classical {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > 3) {
    throw ContractViolation("spatial dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
}

bool finite(const ForceTensor& f) {
  for (int i = 0; i < f.dim; ++i) {
    if (!f.component[i].allFinite()) return false;
  }
  return true;
}

}  // namespace

ForceTensorField::ForceTensorField(int dim, Map eval, bool symmetric, std::string name)
    : dim_(dim), eval_(std::move(eval)), symmetric_(symmetric), name_(std::move(name)) {
  check_dim(dim);
  if (!eval_) throw ContractViolation("force field needs an evaluation map");
}

ForceTensor ForceTensorField::operator()(const Position& x) const {
  if (x.size() != dim_) {
    throw ContractViolation("position has " + std::to_string(x.size()) +
                            " components, force field expects " + std::to_string(dim_));
  }
  ForceTensor f = eval_(x);
  f.dim = dim_;
  if (!finite(f)) throw EvaluationError("force '" + name_ + "' is not finite at the requested point");
  return f;
}

ForceTensorField ForceTensorField::scaled(double factor) const {
  auto inner = eval_;
  return ForceTensorField(
      dim_,
      [inner, factor](const Position& x) {
        ForceTensor f = inner(x);
        for (auto& c : f.component) c *= factor;
        return f;
      },
      symmetric_, name_);
}

ForceGradient force_gradient(const ForceTensorField& force, const Position& x,
                             const core::Tolerances& tol) {
  ForceGradient g;
  g.dim = force.dim();
  for (int m = 0; m < force.dim(); ++m) {
    auto along = [&](double xm) {
      Position shifted = x;
      shifted(m) = xm;
      const ForceTensor f = force(shifted);
      Eigen::Matrix<double, 2, 6> packed;
      packed << f.component[0], f.component[1], f.component[2];
      return packed;
    };
    const double step = core::default_step(x(m), tol.fd_step);
    const Eigen::Matrix<double, 2, 6> dpacked = core::central_difference(along, x(m), step);
    for (int i = 0; i < force.dim(); ++i) g.d[i][m] = dpacked.block<2, 2>(0, 2 * i);
  }
  return g;
}

double antisymmetric_defect(const ForceTensorField& force, const Position& x) {
  const ForceTensor f = force(x);
  double worst = 0.0;
  for (int i = 0; i < f.dim; ++i) {
    worst = std::max(worst, std::abs(f.component[i](0, 1) - f.component[i](1, 0)));
  }
  return worst;
}

double check_symmetry(const ForceTensorField& force, const std::vector<Position>& samples) {
  double worst = 0.0;
  for (const auto& x : samples) worst = std::max(worst, antisymmetric_defect(force, x));
  return worst;
}

GaugeConnection::GaugeConnection()
    : eval_([](double) { return Eigen::Vector2d::Zero().eval(); }) {}

GaugeConnection::GaugeConnection(Map eval) : eval_(std::move(eval)) {
  if (!eval_) throw ContractViolation("gauge connection needs an evaluation map");
}

Eigen::Vector2d GaugeConnection::operator()(double x) const {
  const Eigen::Vector2d a = eval_(x);
  if (!a.allFinite()) throw EvaluationError("gauge connection is not finite at x");
  return a;
}

ForceTensorField zero_force(int dim) {
  return ForceTensorField(
      dim, [dim](const Position&) { return ForceTensor{dim}; }, true, "zero");
}

ForceTensorField rank_one_force(int dim, const Eigen::Vector2d& c,
                                std::function<Position(const Position&)> potential) {
  if (!potential) throw ContractViolation("rank-one force needs G(x)");
  const Eigen::Matrix2d outer = c * c.transpose();
  return ForceTensorField(
      dim,
      [dim, outer, potential = std::move(potential)](const Position& x) {
        const Position g = potential(x);
        if (g.size() != dim) throw ContractViolation("G(x) must have d components");
        ForceTensor f{dim};
        for (int i = 0; i < dim; ++i) f.component[i] = outer * g(i);
        return f;
      },
      true, "rank_one");
}

double PolynomialEntry::operator()(const Position& x) const {
  const int d = static_cast<int>(x.size());
  double value = constant;
  for (int m = 0; m < d; ++m) {
    value += linear(m) * x(m);
    for (int n = 0; n < d; ++n) value += quadratic(m, n) * x(m) * x(n);
  }
  return value;
}

ForceTensorField polynomial_force(const PolynomialForceSpec& spec, std::string name) {
  check_dim(spec.dim);
  PolynomialForceSpec s = spec;
  if (s.symmetric) {
    for (int i = 0; i < s.dim; ++i) s.entries[i][1][0] = s.entries[i][0][1];
  }
  return ForceTensorField(
      s.dim,
      [s](const Position& x) {
        ForceTensor f{s.dim};
        for (int i = 0; i < s.dim; ++i) {
          for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) f.component[i](j, k) = s.entries[i][j][k](x);
          }
        }
        return f;
      },
      s.symmetric, std::move(name));
}

PolynomialForceSpec random_polynomial_spec(int dim, std::uint64_t seed, int degree,
                                           bool symmetric) {
  check_dim(dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  PolynomialForceSpec spec;
  spec.dim = dim;
  spec.symmetric = symmetric;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        auto& e = spec.entries[i][j][k];
        e.constant = coef(rng);
        for (int m = 0; m < dim; ++m) e.linear(m) = coef(rng);
        if (degree >= 2) {
          for (int m = 0; m < dim; ++m) {
            for (int n = m; n < dim; ++n) e.quadratic(m, n) = coef(rng);
          }
        }
      }
    }
  }
  return spec;
}

}  // namespace bitempo::classical
