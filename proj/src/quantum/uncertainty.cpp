#include "bitempo/quantum/uncertainty.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bitempo/core/errors.hpp"

namespace bitempo::quantum {

void UncertaintyBudget::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ContractViolation("hbar must be finite and > 0");
  for (double v : {dE1, dE2, ddE1, ddE2, t.t1, t.t2}) {
    if (!std::isfinite(v)) throw ContractViolation("uncertainty budget entries must be finite");
  }
}

std::string to_string(Visibility v) {
  switch (v) {
    case Visibility::frozen: return "frozen";
    case Visibility::threshold: return "threshold";
    case Visibility::oscillating: return "oscillating";
  }
  return "unknown";
}

VisibilityReport uncertainty_visibility(const UncertaintyBudget& budget, const VisibilityMargins& margins) {
  budget.validate();
  if (!(margins.low >= 0.0) || !(margins.high >= margins.low)) {
    throw ContractViolation("visibility margins need 0 <= low <= high");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  VisibilityReport r;
  r.phase = std::abs(budget.dE1 * budget.t.t1 + budget.dE2 * budget.t.t2) / budget.hbar;
  if (r.phase >= two_pi * margins.high) {
    r.visibility = Visibility::oscillating;
  } else if (r.phase < two_pi * margins.low) {
    r.visibility = Visibility::frozen;
  } else {
    r.visibility = Visibility::threshold;
  }
  return r;
}

AngleWidth angle_and_width(const UncertaintyBudget& b) {
  b.validate();
  const double e2 = b.dE1 * b.dE1 + b.dE2 * b.dE2;
  if (e2 == 0.0) throw DomainError("angle undefined: both level spacings vanish");
  const double e = std::sqrt(e2);
  const double t = std::hypot(b.t.t1, b.t.t2);
  const double te = t * e;
  const double hbar = b.hbar;

  if (te < hbar * (1.0 - 4.0 * std::numeric_limits<double>::epsilon())) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "cos(phi) = hbar / (t |dE|) <= 1 violated: t |dE| = " << te << " < hbar = " << hbar;
    throw DomainError(msg.str());
  }
  const double radicand = te * te - hbar * hbar;
  if (radicand <= 0.0 || te <= hbar) {
    throw DegeneratePointError("t |dE| = hbar: phi = 0 and the exact width is singular");
  }

  AngleWidth w;
  w.cos_phi = hbar / te;
  w.phi = std::acos(w.cos_phi);
  const double numerator = std::abs(b.dE1 * b.ddE1 + b.dE2 * b.ddE2);
  w.dphi_exact = hbar * numerator / (e2 * std::sqrt(radicand));
  w.dphi_lowest_order = hbar * numerator / (t * e2 * e);
  w.bound = numerator / e2;
  w.exact_within_bound = w.dphi_exact <= w.bound;
  return w;
}

SpacingStatistics spacing_statistics(const TwoTimeQuantumSystem& sys, const StateVector& psi,
                                     double min_weight) {
  if (psi.size() != sys.n_levels()) throw ContractViolation("state and system sizes differ");
  double wsum = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  SpacingStatistics out;
  for (int n = 0; n < sys.n_levels(); ++n) {
    for (int m = 0; m < n; ++m) {
      const double w = std::norm(psi.psi()(n)) * std::norm(psi.psi()(m));
      if (w <= min_weight) continue;
      const SpacingPair d = spacing(sys, n, m);
      const double a1 = std::abs(d.d1);
      const double a2 = std::abs(d.d2);
      wsum += w;
      s1 += w * a1;
      s2 += w * a2;
      q1 += w * a1 * a1;
      q2 += w * a2 * a2;
      ++out.pairs;
    }
  }
  if (out.pairs == 0) throw DomainError("state populates fewer than two levels; no spacing statistics");
  out.mean_d1 = s1 / wsum;
  out.mean_d2 = s2 / wsum;
  out.std_d1 = std::sqrt(std::max(0.0, q1 / wsum - out.mean_d1 * out.mean_d1));
  out.std_d2 = std::sqrt(std::max(0.0, q2 / wsum - out.mean_d2 * out.mean_d2));
  return out;
}

UncertaintyBudget budget_from_state(const TwoTimeQuantumSystem& sys, const StateVector& psi,
                                    const core::TimePlanePoint& t, double hbar) {
  const SpacingStatistics s = spacing_statistics(sys, psi);
  UncertaintyBudget b{s.mean_d1, s.mean_d2, s.std_d1, s.std_d2, t, hbar};
  b.validate();
  return b;
}

}  // namespace bitempo::quantum
