#include "bitempo/core/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bitempo/core/errors.hpp"

namespace bitempo::core {

namespace {

template <typename Scalar>
void check_shape(const SmallMatrix<Scalar>& m, bool square) {
  if (m.rows() < 1 || m.cols() < 1 || m.rows() > kMaxSmallSize || m.cols() > kMaxSmallSize) {
    throw ContractViolation("small matrix must be between 1x1 and 8x8, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (square && m.rows() != m.cols()) {
    throw ContractViolation("determinant needs a square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

template <typename Scalar>
Scalar eliminate(SmallMatrix<Scalar> a) {
  check_shape(a, true);
  const Eigen::Index n = a.rows();
  Scalar det{1.0};
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (a(pivot, col) == Scalar{0.0}) return Scalar{0.0};
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Scalar factor = a(r, col) / a(col, col);
      a.row(r).tail(n - col) -= factor * a.row(col).tail(n - col);
    }
  }
  return det;
}

template <typename Scalar>
using DynamicMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
std::vector<double> singular_values_impl(const SmallMatrix<Scalar>& m) {
  check_shape(m, false);
  const DynamicMatrix<Scalar> dense = m;
  Eigen::JacobiSVD<DynamicMatrix<Scalar>> svd(dense);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

template <typename Scalar>
std::vector<SmallVector<Scalar>> null_space_impl(const SmallMatrix<Scalar>& m,
                                                 const Tolerances& tol) {
  check_shape(m, false);
  const DynamicMatrix<Scalar> dense = m;
  Eigen::JacobiSVD<DynamicMatrix<Scalar>> svd(dense, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const auto& v = svd.matrixV();
  const double largest = s.size() > 0 ? s(0) : 0.0;
  const double threshold = tol.abs_tol * largest;

  std::vector<SmallVector<Scalar>> basis;
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const bool beyond_rows = k >= s.size();
    if (beyond_rows || s(k) <= threshold) {
      basis.emplace_back(v.col(k));
    }
  }
  return basis;
}

}  // namespace

double determinant(const RealMatrix& m) { return eliminate<double>(m); }

std::complex<double> determinant(const ComplexMatrix& m) {
  return eliminate<std::complex<double>>(m);
}

std::vector<double> singular_values(const RealMatrix& m) { return singular_values_impl(m); }
std::vector<double> singular_values(const ComplexMatrix& m) { return singular_values_impl(m); }

std::vector<RealVector> null_space(const RealMatrix& m, const Tolerances& tol) {
  return null_space_impl(m, tol);
}

std::vector<ComplexVector> null_space(const ComplexMatrix& m, const Tolerances& tol) {
  return null_space_impl(m, tol);
}

int numerical_rank(const RealMatrix& m, const Tolerances& tol) {
  return static_cast<int>(m.cols() - null_space(m, tol).size());
}

}  // namespace bitempo::core
