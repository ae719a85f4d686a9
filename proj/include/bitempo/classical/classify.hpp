#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bitempo/classical/constraints.hpp"
#include "bitempo/classical/force.hpp"
#include "bitempo/core/grid.hpp"
#include "bitempo/core/linalg.hpp"

namespace bitempo::classical {

enum class Verdict { no_two_time_motion, effective_one_time, two_time_admissible, degenerate };

std::string to_string(Verdict v);
std::string to_string(CoordinateMotion m);

/// A trajectory surface x(t1, t2) over a grid; used for the curl conditions.
struct Trajectory {
  core::Grid2T grid;
  std::function<Position(const core::TimePlanePoint&)> x;
};

struct ClassifyOptions {
  core::Tolerances tol;
  AChainVariant chain = AChainVariant::as_printed;
  /// Restricted unit fields count as parallel when |f_a x f_b| is below this.
  double parallel_tol = 1e-6;
  /// Curl residuals of unit kernel fields below this count as curl free.
  double curl_tol = 1e-4;
};

struct ConstraintReport {
  int dim = 1;
  core::RealMatrix matrix;
  double determinant_value = 0.0;
  double normalized_determinant = 0.0;
  int kernel_dim = 0;
  std::vector<core::RealVector> kernel;
  /// Authoritative fields, one per coordinate, read off the kernel.
  std::vector<KernelField> fields;
  /// Closed-form fields (F for d=1, (C, D) for d=2, C_i for d=3) and their audit.
  AppendixFields appendix;
  /// One entry per restricted coordinate when a trajectory is supplied.
  std::vector<double> curl_residuals;
  double parallelism_defect = 0.0;
  Verdict verdict = Verdict::degenerate;
  std::vector<std::string> notes;
};

/// Decision chain: empty kernel gives no_two_time_motion; no restricted
/// coordinate gives degenerate; mutually parallel restricted fields with no
/// unconstrained coordinate give effective_one_time; otherwise
/// two_time_admissible when the curl conditions hold (or no trajectory is
/// given) and degenerate with a note when they fail.
ConstraintReport classify(const ForceTensorField& force, const Position& x,
                          const std::optional<Trajectory>& trajectory = std::nullopt,
                          const ClassifyOptions& options = {});

}  // namespace bitempo::classical
