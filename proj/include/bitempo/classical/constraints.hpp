#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bitempo/classical/force.hpp"
#include "bitempo/core/grid.hpp"
#include "bitempo/core/linalg.hpp"

namespace bitempo::classical {

/// Velocity constraint matrix acting on (p^1_1, p^1_2, p^2_1, p^2_2, ...).
///
/// d=2 rows are ordered (i,k) = (1,1), (1,2), (2,1), (2,2); d=3 rows are
/// ordered k-major: (1,1), (2,1), (3,1), (1,2), (2,2), (3,2). Column 2m
/// holds F^i_{2k,m} and column 2m+1 holds -F^i_{1k,m}.
/// Throws ContractViolation for d=1.
core::RealMatrix build_constraint_matrix(const ForceTensorField& force, const Position& x,
                                         const core::Tolerances& tol = {});

/// The same system for d=1: [[F'_21, -F'_11], [F'_22, -F'_12]].
core::RealMatrix constraint_matrix_1d(const ForceTensorField& force, double x,
                                      const core::Tolerances& tol = {});

/// Constraint matrix of any supported dimension.
core::RealMatrix constraint_matrix(const ForceTensorField& force, const Position& x,
                                   const core::Tolerances& tol = {});

double admissibility_determinant(const ForceTensorField& force, const Position& x,
                                 const core::Tolerances& tol = {});

/// det(M) / |M|_F^n; zero for the zero matrix.
double normalized_determinant(const core::RealMatrix& m);

/// Disagreement between a closed-form field and the kernel of the constraint
/// matrix for one coordinate.
struct FormulaDiscrepancy {
  int coordinate = 0;
  std::string formula;
  Eigen::Vector2d formula_field = Eigen::Vector2d::Zero();
  /// Unit field orthogonal to the kernel velocities of this coordinate; zero
  /// when the kernel leaves the coordinate frozen or unconstrained.
  Eigen::Vector2d kernel_field = Eigen::Vector2d::Zero();
  double residual = 0.0;
  std::string reason;
};

/// Printed closed-form fields plus their audit against the kernel.
struct AppendixFields {
  std::vector<Eigen::Vector2d> fields;
  bool degenerate = false;
  /// Largest |field . p^i| / (|field| |p^i|) over kernel vectors and coordinates.
  double orthogonality_residual = 0.0;
  std::vector<FormulaDiscrepancy> discrepancies;
};

/// Audits one field per coordinate against the kernel of `m`. Without a
/// kernel there is nothing to audit and no discrepancy is raised.
AppendixFields audit_fields(std::vector<Eigen::Vector2d> fields, const core::RealMatrix& m,
                            const std::string& formula, const core::Tolerances& tol = {});

/// Fields (C, D) for d=2 from the printed 2x2 determinants alpha ... delta'.
/// Evaluated on derivatives scaled to unit largest entry: only the direction
/// of each field carries meaning.
AppendixFields parallel_fields_2d(const ForceTensorField& force, const Position& x,
                                  const core::Tolerances& tol = {});

enum class AChainVariant {
  /// A^1_m(n) = c_mn c_61 - c_m1 c_6n, as printed.
  as_printed,
  /// A^1_m(n) = c_mn c_66 - c_m6 c_6n: every stage pivots on its diagonal.
  diagonal_pivot,
};

/// Fields C_1, C_2, C_3 for d=3 from the nested determinant chain. C_2 and
/// C_3 apply the chain after moving coordinate i's velocity pair to the front.
AppendixFields parallel_fields_3d(const ForceTensorField& force, const Position& x,
                                  AChainVariant variant = AChainVariant::as_printed,
                                  const core::Tolerances& tol = {});

/// C_{1,j} from a 6x6 matrix c_mn via the nested determinant chain.
Eigen::Vector2d a_chain_field(const core::RealMatrix& c, AChainVariant variant);

enum class CoordinateMotion { restricted, frozen, unconstrained };

struct KernelField {
  CoordinateMotion motion = CoordinateMotion::frozen;
  /// Unit vector orthogonal to every admissible (p^i_1, p^i_2) when
  /// restricted, first component non-negative; zero otherwise.
  Eigen::Vector2d field = Eigen::Vector2d::Zero();
};

/// Per-coordinate characteristic fields read off a kernel basis.
std::vector<KernelField> kernel_fields(const std::vector<core::RealVector>& kernel, int dim,
                                       const core::Tolerances& tol = {});

/// max over interior grid points of |d1 f_2 - d2 f_1|, derivatives by central
/// differences with the grid spacing of each axis.
double curl_residual(const std::function<Eigen::Vector2d(const core::TimePlanePoint&)>& field,
                     const core::Grid2T& grid);

}  // namespace bitempo::classical
