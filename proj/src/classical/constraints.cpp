#include "bitempo/classical/constraints.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bitempo/classical/one_dim.hpp"
#include "bitempo/core/errors.hpp"

namespace bitempo::classical {

namespace {

// Below this singular value a block of unit kernel vectors counts as rank deficient.
constexpr double kBlockRankTol = 1e-6;

double det2(double a, double b, double c, double d) { return a * d - b * c; }

double max_abs(const core::RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

core::RealMatrix unit_scaled(const core::RealMatrix& m) {
  const double s = max_abs(m);
  return s > 0.0 ? core::RealMatrix(m / s) : m;
}

}  // namespace

core::RealMatrix build_constraint_matrix(const ForceTensorField& force, const Position& x,
                                         const core::Tolerances& tol) {
  const int d = force.dim();
  if (d == 1) {
    throw ContractViolation("constraint matrix is defined for d=2 and d=3; use the 1d operations");
  }
  const ForceGradient g = force_gradient(force, x, tol);
  core::RealMatrix m = core::RealMatrix::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < 2; ++k) {
      const int row = d == 2 ? 2 * i + k : d * k + i;
      for (int mm = 0; mm < d; ++mm) {
        m(row, 2 * mm) = g(i, 1, k, mm);
        m(row, 2 * mm + 1) = -g(i, 0, k, mm);
      }
    }
  }
  return m;
}

core::RealMatrix constraint_matrix_1d(const ForceTensorField& force, double x,
                                      const core::Tolerances& tol) {
  const ForceSlopes s = force_slopes_1d(force, x, tol);
  core::RealMatrix m(2, 2);
  m << s.f21, -s.f11, s.f22, -s.f12;
  return m;
}

core::RealMatrix constraint_matrix(const ForceTensorField& force, const Position& x,
                                   const core::Tolerances& tol) {
  if (force.dim() == 1) {
    if (x.size() != 1) throw ContractViolation("position must have 1 component");
    return constraint_matrix_1d(force, x(0), tol);
  }
  return build_constraint_matrix(force, x, tol);
}

double admissibility_determinant(const ForceTensorField& force, const Position& x,
                                 const core::Tolerances& tol) {
  return core::determinant(build_constraint_matrix(force, x, tol));
}

double normalized_determinant(const core::RealMatrix& m) {
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  return core::determinant(core::RealMatrix(m / norm));
}

std::vector<KernelField> kernel_fields(const std::vector<core::RealVector>& kernel, int dim,
                                       const core::Tolerances&) {
  std::vector<KernelField> out(static_cast<std::size_t>(dim));
  if (kernel.empty()) return out;
  for (int i = 0; i < dim; ++i) {
    Eigen::Matrix<double, 2, Eigen::Dynamic> block(2, kernel.size());
    for (std::size_t v = 0; v < kernel.size(); ++v) block.col(static_cast<Eigen::Index>(v)) = kernel[v].segment<2>(2 * i);
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, Eigen::Dynamic>> svd(block, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    KernelField& f = out[static_cast<std::size_t>(i)];
    if (s(0) <= kBlockRankTol) {
      f.motion = CoordinateMotion::frozen;
    } else if (s.size() < 2 || s(1) <= kBlockRankTol * s(0)) {
      const Eigen::Vector2d u = svd.matrixU().col(0);
      Eigen::Vector2d perp(u(1), -u(0));
      if (perp(0) < 0.0 || (perp(0) == 0.0 && perp(1) < 0.0)) perp = -perp;
      f.motion = CoordinateMotion::restricted;
      f.field = perp.normalized();
    } else {
      f.motion = CoordinateMotion::unconstrained;
    }
  }
  return out;
}

AppendixFields audit_fields(std::vector<Eigen::Vector2d> fields, const core::RealMatrix& m,
                            const std::string& formula, const core::Tolerances& tol) {
  const int dim = static_cast<int>(m.cols() / 2);
  if (static_cast<int>(fields.size()) != dim) {
    throw ContractViolation("one field per coordinate is required");
  }
  AppendixFields out;
  out.fields = std::move(fields);
  out.degenerate = std::all_of(out.fields.begin(), out.fields.end(), [&](const Eigen::Vector2d& f) {
    return f.norm() <= tol.abs_tol;
  });

  const auto kernel = core::null_space(m, tol);
  if (kernel.empty()) return out;
  const auto expected = kernel_fields(kernel, dim, tol);

  for (int i = 0; i < dim; ++i) {
    const Eigen::Vector2d& f = out.fields[static_cast<std::size_t>(i)];
    const KernelField& k = expected[static_cast<std::size_t>(i)];
    if (k.motion == CoordinateMotion::frozen) continue;

    double residual = 0.0;
    const double fn = f.norm();
    if (fn > tol.abs_tol) {
      for (const auto& v : kernel) {
        const Eigen::Vector2d p = v.segment<2>(2 * i);
        if (p.norm() <= kBlockRankTol) continue;
        residual = std::max(residual, std::abs(f.dot(p)) / (fn * p.norm()));
      }
    }
    out.orthogonality_residual = std::max(out.orthogonality_residual, residual);

    FormulaDiscrepancy report{i, formula, f, k.field, residual, {}};
    if (k.motion == CoordinateMotion::restricted && fn <= tol.abs_tol) {
      report.reason = "closed-form field vanishes while the kernel restricts this coordinate";
      report.residual = 1.0;
      out.orthogonality_residual = std::max(out.orthogonality_residual, 1.0);
    } else if (residual > tol.rel_tol) {
      report.reason = "closed-form field is not orthogonal to the kernel velocities";
    } else {
      continue;
    }
    out.discrepancies.push_back(std::move(report));
  }
  return out;
}

AppendixFields parallel_fields_2d(const ForceTensorField& force, const Position& x,
                                  const core::Tolerances& tol) {
  if (force.dim() != 2) throw ContractViolation("parallel_fields_2d needs a d=2 force");
  const core::RealMatrix m = build_constraint_matrix(force, x, tol);
  ForceGradient g = force_gradient(force, x, tol);
  double scale = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int mm = 0; mm < 2; ++mm) scale = std::max(scale, g.d[i][mm].cwiseAbs().maxCoeff());
  }
  if (scale > 0.0) {
    for (int i = 0; i < 2; ++i) {
      for (int mm = 0; mm < 2; ++mm) g.d[i][mm] /= scale;
    }
  }

  // F^sup_{jk,sub} with one-based time indices; sup and sub are 'x' or 'y'.
  auto F = [&](char sup, int jk, char sub) {
    return g(sup == 'x' ? 0 : 1, jk / 10 - 1, jk % 10 - 1, sub == 'x' ? 0 : 1);
  };

  const double alpha = det2(F('x', 21, 'x'), F('x', 21, 'y'), F('y', 21, 'x'), F('y', 21, 'y'));
  const double beta = det2(F('x', 11, 'x'), F('x', 12, 'x'), F('y', 11, 'x'), F('y', 21, 'x'));
  const double gamma = det2(F('x', 21, 'y'), F('x', 22, 'y'), F('x', 21, 'x'), F('x', 22, 'x'));
  const double delta = det2(F('x', 21, 'x'), F('x', 12, 'x'), F('x', 21, 'x'), F('x', 22, 'x'));

  const double alpha_t = -alpha;
  const double beta_t = det2(F('x', 11, 'y'), F('x', 21, 'y'), F('y', 11, 'y'), F('y', 21, 'y'));
  const double gamma_t = -gamma;
  const double delta_t = det2(F('x', 11, 'y'), F('x', 12, 'y'), F('x', 21, 'y'), F('x', 22, 'y'));

  const double alpha_p = det2(F('x', 21, 'x'), F('x', 11, 'y'), F('y', 21, 'x'), F('y', 11, 'y'));
  const double beta_p = beta;
  const double gamma_p = det2(F('x', 11, 'y'), F('x', 12, 'y'), F('x', 21, 'x'), F('x', 22, 'x'));
  const double delta_p = delta;

  const double alpha_tp = det2(F('y', 21, 'y'), F('y', 11, 'x'), F('x', 21, 'y'), F('x', 11, 'x'));
  const double beta_tp = beta_t;
  const double gamma_tp = det2(F('x', 22, 'y'), F('x', 12, 'x'), F('x', 21, 'y'), F('x', 11, 'x'));
  const double delta_tp = delta_t;

  const Eigen::Vector2d c(det2(alpha_t, beta_t, gamma_t, delta_t),
                          det2(alpha_tp, beta_tp, gamma_tp, delta_tp));
  const Eigen::Vector2d dd(det2(alpha, beta, gamma, delta), det2(alpha_p, beta_p, gamma_p, delta_p));
  return audit_fields({c, dd}, m, "2d appendix determinants", tol);
}

Eigen::Vector2d a_chain_field(const core::RealMatrix& c, AChainVariant variant) {
  if (c.rows() != 6 || c.cols() != 6) throw ContractViolation("A-chain needs a 6x6 matrix");
  // One-based indexing keeps the chain readable against its definition.
  auto cc = [&](int m, int n) { return c(m - 1, n - 1); };
  const int pivot = variant == AChainVariant::as_printed ? 1 : 6;

  // Each stage is rescaled to unit largest entry; directions are unaffected.
  auto normalize = [](auto& a, int size) {
    double s = 0.0;
    for (int m = 1; m <= size; ++m) {
      for (int n = 1; n <= size; ++n) s = std::max(s, std::abs(a[m][n]));
    }
    if (s == 0.0) return;
    for (int m = 1; m <= size; ++m) {
      for (int n = 1; n <= size; ++n) a[m][n] /= s;
    }
  };
  std::array<std::array<double, 6>, 6> a1{};
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 5; ++n) a1[m][n] = det2(cc(m, n), cc(m, pivot), cc(6, n), cc(6, pivot));
  }
  normalize(a1, 5);
  std::array<std::array<double, 5>, 5> a2{};
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) a2[m][n] = det2(a1[m][n], a1[m][5], a1[5][n], a1[5][5]);
  }
  normalize(a2, 4);
  std::array<std::array<double, 4>, 4> a3{};
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) a3[m][n] = det2(a2[m][n], a2[m][4], a2[4][n], a2[4][4]);
  }
  normalize(a3, 3);
  return {det2(a3[2][1], a3[2][3], a3[3][1], a3[3][3]),
          det2(a3[2][2], a3[2][3], a3[3][2], a3[3][3])};
}

AppendixFields parallel_fields_3d(const ForceTensorField& force, const Position& x,
                                  AChainVariant variant, const core::Tolerances& tol) {
  if (force.dim() != 3) throw ContractViolation("parallel_fields_3d needs a d=3 force");
  const core::RealMatrix m = build_constraint_matrix(force, x, tol);
  const core::RealMatrix c = unit_scaled(m);

  // Column orders moving coordinate i's velocity pair to the front.
  static constexpr std::array<std::array<int, 6>, 3> kOrder{{
      {0, 1, 2, 3, 4, 5},
      {2, 3, 0, 1, 4, 5},
      {4, 5, 2, 3, 0, 1},
  }};
  std::vector<Eigen::Vector2d> fields;
  for (const auto& order : kOrder) {
    core::RealMatrix permuted(6, 6);
    for (int col = 0; col < 6; ++col) permuted.col(col) = c.col(order[static_cast<std::size_t>(col)]);
    fields.push_back(a_chain_field(permuted, variant));
  }
  const char* name = variant == AChainVariant::as_printed ? "3d A-chain (as printed)"
                                                          : "3d A-chain (diagonal pivot)";
  return audit_fields(std::move(fields), m, name, tol);
}

double curl_residual(const std::function<Eigen::Vector2d(const core::TimePlanePoint&)>& field,
                     const core::Grid2T& grid) {
  if (!field) throw ContractViolation("curl needs a field map");
  if (grid.n1() < 3 || grid.n2() < 3) throw ContractViolation("curl needs at least 3x3 grid points");
  const double h1 = grid.t1().step();
  const double h2 = grid.t2().step();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.n1(); ++i) {
    for (std::size_t j = 1; j + 1 < grid.n2(); ++j) {
      const double d1f2 = (field(grid.point(i + 1, j))(1) - field(grid.point(i - 1, j))(1)) / (2 * h1);
      const double d2f1 = (field(grid.point(i, j + 1))(0) - field(grid.point(i, j - 1))(0)) / (2 * h2);
      const double curl = d1f2 - d2f1;
      if (!std::isfinite(curl)) throw EvaluationError("field is not finite near a grid point");
      worst = std::max(worst, std::abs(curl));
    }
  }
  return worst;
}

}  // namespace bitempo::classical
