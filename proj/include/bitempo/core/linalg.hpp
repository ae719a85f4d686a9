#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bitempo/core/grid.hpp"

namespace bitempo::core {

inline constexpr int kMaxSmallSize = 8;

/// Dense row-major matrix with at most 8 rows and columns. Houses the
/// velocity constraint systems and the 2x2 gamma matrices.
template <typename Scalar>
using SmallMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor,
                                  kMaxSmallSize, kMaxSmallSize>;
template <typename Scalar>
using SmallVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxSmallSize, 1>;

using RealMatrix = SmallMatrix<double>;
using ComplexMatrix = SmallMatrix<std::complex<double>>;
using RealVector = SmallVector<double>;
using ComplexVector = SmallVector<std::complex<double>>;

/// Determinant by Gaussian elimination with partial pivoting.
/// Throws ContractViolation for non-square input.
double determinant(const RealMatrix& m);
std::complex<double> determinant(const ComplexMatrix& m);

/// Singular values in decreasing order.
std::vector<double> singular_values(const RealMatrix& m);
std::vector<double> singular_values(const ComplexMatrix& m);

/// Orthonormal basis of the numerical kernel of `m`.
///
/// A right singular direction belongs to the kernel when its singular value
/// is at most `tol.abs_tol` times the largest singular value; directions
/// beyond the row count always belong to it. Returns an empty list for full
/// column rank.
std::vector<RealVector> null_space(const RealMatrix& m, const Tolerances& tol = {});
std::vector<ComplexVector> null_space(const ComplexMatrix& m, const Tolerances& tol = {});

/// Number of singular values above `tol.abs_tol` times the largest one.
int numerical_rank(const RealMatrix& m, const Tolerances& tol = {});

}  // namespace bitempo::core
