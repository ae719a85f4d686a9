#include "bitempo/classical/classify.hpp"

#include <algorithm>
#include <cmath>

#include "bitempo/classical/one_dim.hpp"
#include "bitempo/core/errors.hpp"

namespace bitempo::classical {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::no_two_time_motion: return "no_two_time_motion";
    case Verdict::effective_one_time: return "effective_one_time";
    case Verdict::two_time_admissible: return "two_time_admissible";
    case Verdict::degenerate: return "degenerate";
  }
  return "unknown";
}

std::string to_string(CoordinateMotion m) {
  switch (m) {
    case CoordinateMotion::restricted: return "restricted";
    case CoordinateMotion::frozen: return "frozen";
    case CoordinateMotion::unconstrained: return "unconstrained";
  }
  return "unknown";
}

namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a(0) * b(1) - a(1) * b(0); }

AppendixFields appendix_fields(const ForceTensorField& force, const Position& x,
                               const core::RealMatrix& m, const ClassifyOptions& options,
                               std::vector<std::string>& notes) {
  switch (force.dim()) {
    case 1:
      try {
        const CharacteristicVector f = characteristic_field_1d(force, x(0), options.tol);
        return audit_fields({f.value}, m, "1d characteristic field", options.tol);
      } catch (const ComplexCharacteristicError& e) {
        notes.emplace_back(e.what());
        AppendixFields out;
        out.fields = {Eigen::Vector2d::Zero()};
        out.degenerate = true;
        return out;
      }
    case 2: return parallel_fields_2d(force, x, options.tol);
    default: return parallel_fields_3d(force, x, options.chain, options.tol);
  }
}

}  // namespace

ConstraintReport classify(const ForceTensorField& force, const Position& x,
                          const std::optional<Trajectory>& trajectory,
                          const ClassifyOptions& options) {
  options.tol.validate();
  ConstraintReport r;
  r.dim = force.dim();
  r.matrix = constraint_matrix(force, x, options.tol);
  r.determinant_value = core::determinant(r.matrix);
  r.normalized_determinant = normalized_determinant(r.matrix);
  r.kernel = core::null_space(r.matrix, options.tol);
  r.kernel_dim = static_cast<int>(r.kernel.size());
  r.fields = kernel_fields(r.kernel, r.dim, options.tol);
  r.appendix = appendix_fields(force, x, r.matrix, options, r.notes);
  for (const auto& d : r.appendix.discrepancies) {
    r.notes.push_back(d.formula + ", coordinate " + std::to_string(d.coordinate + 1) + ": " + d.reason);
  }

  if (r.kernel_dim == 0) {
    r.verdict = Verdict::no_two_time_motion;
    return r;
  }

  std::vector<int> restricted;
  bool unconstrained = false;
  for (int i = 0; i < r.dim; ++i) {
    const auto motion = r.fields[static_cast<std::size_t>(i)].motion;
    if (motion == CoordinateMotion::restricted) restricted.push_back(i);
    if (motion == CoordinateMotion::unconstrained) unconstrained = true;
  }
  if (restricted.empty()) {
    r.verdict = Verdict::degenerate;
    r.notes.emplace_back("no coordinate is restricted by the kernel");
    return r;
  }
  for (std::size_t a = 0; a < restricted.size(); ++a) {
    for (std::size_t b = a + 1; b < restricted.size(); ++b) {
      r.parallelism_defect = std::max(
          r.parallelism_defect, std::abs(cross(r.fields[static_cast<std::size_t>(restricted[a])].field,
                                               r.fields[static_cast<std::size_t>(restricted[b])].field)));
    }
  }

  bool curl_free = true;
  if (trajectory) {
    for (int i : restricted) {
      auto field = [&, i](const core::TimePlanePoint& t) -> Eigen::Vector2d {
        const core::RealMatrix m = constraint_matrix(force, trajectory->x(t), options.tol);
        return kernel_fields(core::null_space(m, options.tol), r.dim, options.tol)[static_cast<std::size_t>(i)].field;
      };
      const double curl = curl_residual(field, trajectory->grid);
      r.curl_residuals.push_back(curl);
      if (curl > options.curl_tol) curl_free = false;
    }
  }

  if (r.parallelism_defect <= options.parallel_tol && !unconstrained) {
    r.verdict = Verdict::effective_one_time;
  } else if (curl_free) {
    r.verdict = Verdict::two_time_admissible;
  } else {
    r.verdict = Verdict::degenerate;
    r.notes.emplace_back("characteristic fields are not curl free along the trajectory");
  }
  return r;
}

}  // namespace bitempo::classical
