#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "bitempo/classical/classify.hpp"
#include "bitempo/classical/force.hpp"
#include "bitempo/classical/integrator.hpp"
#include "bitempo/classical/one_dim.hpp"
#include "bitempo/cli/output.hpp"
#include "bitempo/continuity/charges.hpp"
#include "bitempo/continuity/ehrenfest.hpp"
#include "bitempo/continuity/manufactured.hpp"
#include "bitempo/dirac/gamma.hpp"
#include "bitempo/dirac/mode_mass.hpp"
#include "bitempo/dirac/plane_wave.hpp"
#include "bitempo/quantum/system.hpp"
#include "bitempo/quantum/uncertainty.hpp"

namespace bitempo::cli::detail {

namespace fs = std::filesystem;

void Artifacts::write(const std::string& suffix, const std::string& content) {
  const std::string name = stem_ + "." + suffix;
  write_atomic(dir_ / name, content);
  names_.push_back(name);
}

namespace {

const std::vector<std::string> force_families{"rank_one", "polynomial", "table", "zero"};
const std::vector<std::string> potentials{"harmonic", "anharmonic", "pendulum"};

std::string choose(const ScenarioConfig& cfg, const std::string& section, const std::string& key,
                   const std::vector<std::string>& known, const std::string& what) {
  const std::string v = cfg.text(section, key);
  if (std::find(known.begin(), known.end(), v) == known.end()) {
    std::string list;
    for (const auto& s : suggestions(v, known)) list += (list.empty() ? "" : ", ") + s;
    throw ConfigError(cfg.where(section, key) + "unknown " + what + " '" + v + "'; expected one of: " + list);
  }
  return v;
}

core::Grid2T time_grid(const ScenarioConfig& cfg, bool with_space) {
  const core::Axis t1 = cfg.axis("grid", "t1");
  const core::Axis t2 = cfg.axis("grid", "t2");
  if (!with_space) return core::Grid2T::make(t1, t2);
  return core::Grid2T::make(t1, t2, cfg.axis("grid", "x"));
}

json axis_json(const core::Axis& a) { return {{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

// ---------------------------------------------------------------------------
// Force families

struct PotentialSpec {
  std::string kind = "harmonic";
  double stiffness = 1.0;
  double cubic = 0.0;

  double operator()(double x) const {
    if (kind == "harmonic") return -stiffness * x;
    if (kind == "anharmonic") return -stiffness * x - cubic * x * x * x;
    return -stiffness * std::sin(x);
  }
};

struct ForceSpec {
  std::string family;
  int dim = 1;
  Eigen::Vector2d c = Eigen::Vector2d::Ones();
  PotentialSpec potential;
  classical::PolynomialForceSpec polynomial;
  std::uint64_t seed = 0;
};

ForceSpec parse_force(const ScenarioConfig& cfg) {
  ForceSpec f;
  f.family = choose(cfg, "force", "family", force_families, "force family");
  const long dim = cfg.integer("force", "dim", 1);
  if (dim < 1 || dim > 3) throw ConfigError(cfg.where("force", "dim") + "[force] dim must be 1, 2 or 3");
  f.dim = static_cast<int>(dim);
  if (f.family == "rank_one") {
    const auto c = cfg.numbers("force", "c");
    if (c.size() != 2) throw ConfigError(cfg.where("force", "c") + "[force] c needs two entries");
    f.c = Eigen::Vector2d(c[0], c[1]);
    f.potential.kind = cfg.has("force", "potential") ? choose(cfg, "force", "potential", potentials, "potential")
                                                     : "harmonic";
    f.potential.stiffness = cfg.number("force", "stiffness", 1.0);
    f.potential.cubic = cfg.number("force", "cubic", f.potential.kind == "anharmonic" ? 0.1 : 0.0);
  } else if (f.family == "polynomial") {
    const long seed = cfg.integer("force", "seed");
    if (seed < 0) throw ConfigError(cfg.where("force", "seed") + "[force] seed must be >= 0");
    const long degree = cfg.integer("force", "degree", 2);
    if (degree != 1 && degree != 2) throw ConfigError(cfg.where("force", "degree") + "[force] degree must be 1 or 2");
    f.seed = static_cast<std::uint64_t>(seed);
    f.polynomial = classical::random_polynomial_spec(f.dim, f.seed, static_cast<int>(degree),
                                                     cfg.flag("force", "symmetric", true));
  } else if (f.family == "table") {
    f.polynomial.dim = f.dim;
    f.polynomial.symmetric = cfg.flag("force", "symmetric", true);
    for (const auto& [key, value] : cfg.sections().at("force")) {
      if (key.size() != 4 || key[0] != 'F') continue;
      const int i = key[1] - '1', j = key[2] - '1', k = key[3] - '1';
      if (i < 0 || i >= f.dim || j < 0 || j > 1 || k < 0 || k > 1) {
        throw ConfigError(cfg.where("force", key) + "[force] " + key + ": index out of range for dim " +
                          std::to_string(f.dim));
      }
      const auto coeff = cfg.numbers("force", key);
      if (coeff.size() > static_cast<std::size_t>(1 + f.dim)) {
        throw ConfigError(cfg.where("force", key) + "[force] " + key + ": at most constant plus " +
                          std::to_string(f.dim) + " linear coefficients");
      }
      auto& e = f.polynomial.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                    [static_cast<std::size_t>(k)];
      e.constant = coeff[0];
      for (std::size_t m = 1; m < coeff.size(); ++m) e.linear(static_cast<Eigen::Index>(m - 1)) = coeff[m];
    }
  }
  return f;
}

classical::ForceTensorField build_force(const ForceSpec& f) {
  if (f.family == "rank_one") {
    const PotentialSpec g = f.potential;
    return classical::rank_one_force(f.dim, f.c, [g](const classical::Position& x) {
      classical::Position out(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = g(x(i));
      return out;
    });
  }
  if (f.family == "zero") return classical::zero_force(f.dim);
  return classical::polynomial_force(f.polynomial, f.family);
}

// ---------------------------------------------------------------------------
// classical-check

struct CheckParams {
  ForceSpec force;
  std::vector<classical::Position> points;
};

CheckParams parse_classical_check(const ScenarioConfig& cfg) {
  CheckParams p;
  p.force = parse_force(cfg);
  if (cfg.has("points", "x")) {
    for (const auto& row : cfg.rows("points", "x")) {
      if (row.size() != static_cast<std::size_t>(p.force.dim)) {
        throw ConfigError(cfg.where("points", "x") + "[points] x: each point needs " +
                          std::to_string(p.force.dim) + " coordinates");
      }
      classical::Position x(p.force.dim);
      for (int i = 0; i < p.force.dim; ++i) x(i) = row[static_cast<std::size_t>(i)];
      p.points.push_back(x);
    }
  } else {
    const long count = cfg.integer("points", "random");
    const long seed = cfg.integer("points", "seed", 1);
    if (count < 1) throw ConfigError(cfg.where("points", "random") + "[points] random must be >= 1");
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (long n = 0; n < count; ++n) {
      classical::Position x(p.force.dim);
      for (int i = 0; i < p.force.dim; ++i) x(i) = u(rng);
      p.points.push_back(x);
    }
  }
  return p;
}

json run_classical_check(const ScenarioConfig& cfg, Artifacts& out) {
  const CheckParams p = parse_classical_check(cfg);
  const auto force = build_force(p.force);
  std::vector<std::string> cols;
  for (int i = 1; i <= p.force.dim; ++i) cols.push_back("x" + std::to_string(i));
  for (const char* c : {"normalized_determinant", "kernel_dim", "verdict_code", "discrepancies"}) cols.emplace_back(c);
  CsvTable table(cols);

  std::map<std::string, int> verdicts;
  double max_det = 0.0;
  double max_consistency = 0.0;
  std::size_t discrepancies = 0;
  json first;
  for (const auto& x : p.points) {
    const classical::ConstraintReport r = classical::classify(force, x);
    ++verdicts[classical::to_string(r.verdict)];
    max_det = std::max(max_det, std::abs(r.normalized_determinant));
    discrepancies += r.appendix.discrepancies.size();
    if (p.force.dim == 1) {
      max_consistency = std::max(max_consistency,
                                 classical::consistency_residual_1d(force, classical::GaugeConnection(), x(0)));
    }
    std::vector<double> row(x.data(), x.data() + x.size());
    row.push_back(r.normalized_determinant);
    row.push_back(r.kernel_dim);
    row.push_back(static_cast<double>(r.verdict));
    row.push_back(static_cast<double>(r.appendix.discrepancies.size()));
    table.add_row(row);
    if (first.is_null()) {
      json fields = json::array();
      for (std::size_t c = 0; c < r.fields.size(); ++c) {
        const auto& f = r.fields[c];
        fields.push_back({{"coordinate", c + 1}, {"motion", classical::to_string(f.motion)},
                          {"field", {f.field(0), f.field(1)}}});
      }
      first = {{"x", std::vector<double>(x.data(), x.data() + x.size())},
               {"verdict", classical::to_string(r.verdict)},
               {"determinant", r.determinant_value},
               {"kernel_dim", r.kernel_dim},
               {"fields", fields},
               {"notes", r.notes}};
    }
  }
  out.write("points.csv", table.text());
  json res = {{"points", p.points.size()},
              {"verdicts", verdicts},
              {"max_abs_normalized_determinant", max_det},
              {"formula_discrepancies", discrepancies},
              {"first_point", first}};
  if (p.force.dim == 1) res["max_consistency_residual"] = max_consistency;
  return res;
}

// ---------------------------------------------------------------------------
// classical-integrate

struct IntegrateParams {
  ForceSpec force;
  core::Grid2T grid = core::Grid2T::make({0, 1, 3}, {0, 1, 3});
  double x0 = 0.0;
  double v0 = 0.0;
  classical::IntegratorOptions options;
};

IntegrateParams parse_classical_integrate(const ScenarioConfig& cfg) {
  IntegrateParams p;
  p.force = parse_force(cfg);
  if (p.force.family != "rank_one" || p.force.dim != 1) {
    throw ConfigError(cfg.where("force", "family") + "classical-integrate supports rank_one forces with dim = 1");
  }
  p.grid = time_grid(cfg, false);
  p.x0 = cfg.number("initial", "x0");
  p.v0 = cfg.number("initial", "v0");
  p.options.rel_tol = cfg.number("integrator", "rel_tol", p.options.rel_tol);
  p.options.blowup_bound = cfg.number("integrator", "blowup_bound", p.options.blowup_bound);
  if (!(p.options.rel_tol > 0.0)) throw ConfigError(cfg.where("integrator", "rel_tol") + "rel_tol must be > 0");
  return p;
}

json run_classical_integrate(const ScenarioConfig& cfg, Artifacts& out) {
  const IntegrateParams p = parse_classical_integrate(cfg);
  const PotentialSpec g = p.force.potential;
  const auto surf = classical::integrate_rank_one_1d(g, p.force.c, p.x0, p.v0, p.grid, p.options);
  const auto force = build_force(p.force);

  const bool harmonic = g.kind == "harmonic" && g.stiffness > 0.0;
  const double w = std::sqrt(std::abs(g.stiffness));
  CsvTable table({"t1", "t2", "x", "p1", "p2"});
  double closed_error = 0.0;
  double orbit = 0.0;
  double orthogonality = 0.0;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < p.grid.n1(); ++i) {
    for (std::size_t k = 0; k < p.grid.n2(); ++k) {
      const core::TimePlanePoint t = p.grid.point(i, k);
      const double x = surf.x(i, k);
      table.add_row({t.t1, t.t2, x, surf.p1(i, k), surf.p2(i, k)});
      if (harmonic) {
        const double s = surf.solution.s_of(t);
        closed_error = std::max(closed_error, std::abs(x - (p.x0 * std::cos(w * s) + p.v0 / w * std::sin(w * s))));
      }
      if (i == 0 || k == 0 || i + 1 == p.grid.n1() || k + 1 == p.grid.n2()) continue;
      try {
        const auto rel = classical::orbit_relation_1d(force, classical::GaugeConnection(), x,
                                                      classical::VelocityPair::one_dim(surf.p1(i, k), surf.p2(i, k)));
        orbit = std::max(orbit, rel.residual);
        const auto ch = classical::characteristic_field_1d(force, x);
        // gradient of the dense solution, independent of the sampled momenta
        const double h = 1e-5;
        const Eigen::Vector2d grad(
            (surf.solution.x({t.t1 + h, t.t2}) - surf.solution.x({t.t1 - h, t.t2})) / (2 * h),
            (surf.solution.x({t.t1, t.t2 + h}) - surf.solution.x({t.t1, t.t2 - h})) / (2 * h));
        orthogonality = std::max(orthogonality, std::abs(ch.value.dot(grad)));
      } catch (const DomainError&) {
        ++skipped;
      }
    }
  }
  out.write("surface.csv", table.text());
  json res = {{"converged", surf.converged},
              {"halvings", surf.halvings},
              {"orbit_residual_max", orbit},
              {"orthogonality_residual_max", orthogonality},
              {"degenerate_points_skipped", skipped}};
  if (harmonic) res["closed_form_max_error"] = closed_error;
  return res;
}

// ---------------------------------------------------------------------------
// quantum-fluct

struct FluctParams {
  std::vector<double> e1;
  std::vector<double> e2;
  Eigen::MatrixXcd x0;
  Eigen::VectorXcd psi;
  double hbar = 1.0;
  core::Grid2T grid = core::Grid2T::make({0, 1, 3}, {0, 1, 3});
};

FluctParams parse_quantum_fluct(const ScenarioConfig& cfg) {
  FluctParams p;
  p.e1 = cfg.numbers("system", "e1");
  p.e2 = cfg.numbers("system", "e2");
  const auto n = static_cast<Eigen::Index>(p.e1.size());
  if (p.e2.size() != p.e1.size()) throw ConfigError(cfg.where("system", "e2") + "[system] e1 and e2 differ in length");
  if (n < 2) throw ConfigError(cfg.where("system", "e1") + "[system] e1 needs at least 2 levels");
  p.x0 = Eigen::MatrixXcd::Zero(n, n);
  if (cfg.has("system", "x0")) {
    const auto rows = cfg.rows("system", "x0");
    if (rows.size() != static_cast<std::size_t>(n)) throw ConfigError(cfg.where("system", "x0") + "[system] x0 must be square");
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (row.size() != static_cast<std::size_t>(n)) throw ConfigError(cfg.where("system", "x0") + "[system] x0 must be square");
      for (Eigen::Index c = 0; c < n; ++c) p.x0(r, c) = row[static_cast<std::size_t>(c)];
    }
  } else {
    // ladder position operator (a + a^dag) / sqrt(2)
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      p.x0(k, k + 1) = p.x0(k + 1, k) = std::sqrt(static_cast<double>(k + 1) / 2.0);
    }
  }
  if (cfg.has("system", "psi")) {
    const auto a = cfg.numbers("system", "psi");
    if (a.size() != static_cast<std::size_t>(n)) throw ConfigError(cfg.where("system", "psi") + "[system] psi needs one amplitude per level");
    p.psi = Eigen::VectorXcd(n);
    for (Eigen::Index k = 0; k < n; ++k) p.psi(k) = a[static_cast<std::size_t>(k)];
  } else {
    p.psi = Eigen::VectorXcd::Ones(n);
  }
  p.hbar = cfg.number("system", "hbar", 1.0);
  if (!(p.hbar > 0.0)) throw ConfigError(cfg.where("system", "hbar") + "[system] hbar must be > 0");
  p.grid = time_grid(cfg, false);
  return p;
}

json run_quantum_fluct(const ScenarioConfig& cfg, Artifacts& out) {
  const FluctParams p = parse_quantum_fluct(cfg);
  const auto sys = quantum::TwoTimeQuantumSystem::make(p.e1, p.e2, p.x0);
  const auto psi = quantum::StateVector::normalized(p.psi);
  const auto trace = quantum::variance_trace(sys, psi, p.grid, p.hbar);

  CsvTable table({"t1", "t2", "mean", "second_moment", "variance"});
  double vmin = trace.variance(0, 0), vmax = vmin;
  for (std::size_t i = 0; i < p.grid.n1(); ++i) {
    for (std::size_t k = 0; k < p.grid.n2(); ++k) {
      const auto t = p.grid.point(i, k);
      const double v = trace.variance(i, k);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
      table.add_row({t.t1, t.t2, trace.mean(i, k).real(), trace.second_moment(i, k).real(), v});
    }
  }
  out.write("variance.csv", table.text());

  json elements = json::array();
  for (int n = 0; n < sys.n_levels(); ++n) {
    for (int m = 0; m < n; ++m) {
      if (std::abs(sys.x0()(n, m)) == 0.0) continue;
      const auto ec = quantum::element_characteristic(sys, n, m);
      elements.push_back({{"n", n}, {"m", m}, {"theta", ec.theta}, {"degenerate", ec.degenerate}});
    }
  }
  json res = {{"levels", sys.n_levels()}, {"variance_min", vmin}, {"variance_max", vmax}, {"elements", elements}};
  try {
    const auto s = quantum::spacing_statistics(sys, psi);
    res["spacing"] = {{"mean_d1", s.mean_d1}, {"mean_d2", s.mean_d2}, {"std_d1", s.std_d1},
                      {"std_d2", s.std_d2}, {"pairs", s.pairs}};
  } catch (const DomainError& e) {
    res["spacing"] = {{"note", e.what()}};
  }
  return res;
}

// ---------------------------------------------------------------------------
// uncertainty

struct UncertaintyParams {
  quantum::UncertaintyBudget budget;
  quantum::VisibilityMargins margins;
  bool angle = true;
};

UncertaintyParams parse_uncertainty(const ScenarioConfig& cfg) {
  UncertaintyParams p;
  p.budget.dE1 = cfg.number("budget", "dE1");
  p.budget.dE2 = cfg.number("budget", "dE2");
  p.budget.ddE1 = cfg.number("budget", "ddE1", 0.0);
  p.budget.ddE2 = cfg.number("budget", "ddE2", 0.0);
  p.budget.t = {cfg.number("budget", "t1"), cfg.number("budget", "t2")};
  p.budget.hbar = cfg.number("budget", "hbar", 1.0);
  if (!(p.budget.hbar > 0.0)) throw ConfigError(cfg.where("budget", "hbar") + "[budget] hbar must be > 0");
  p.margins.low = cfg.number("margins", "low", p.margins.low);
  p.margins.high = cfg.number("margins", "high", p.margins.high);
  if (!(p.margins.low >= 0.0 && p.margins.high >= p.margins.low)) {
    throw ConfigError(cfg.where("margins", "high") + "[margins] need 0 <= low <= high");
  }
  p.angle = cfg.flag("budget", "angle", true);
  return p;
}

json run_uncertainty(const ScenarioConfig& cfg, Artifacts&) {
  const UncertaintyParams p = parse_uncertainty(cfg);
  const auto vis = quantum::uncertainty_visibility(p.budget, p.margins);
  json res = {{"phase", vis.phase}, {"visibility", quantum::to_string(vis.visibility)}};
  if (p.angle) {
    const auto a = quantum::angle_and_width(p.budget);
    res["angle"] = {{"cos_phi", a.cos_phi},
                    {"phi", a.phi},
                    {"dphi_exact", a.dphi_exact},
                    {"dphi_lowest_order", a.dphi_lowest_order},
                    {"bound", a.bound},
                    {"exact_within_bound", a.exact_within_bound}};
  }
  return res;
}

// ---------------------------------------------------------------------------
// continuity

struct ContinuityParams {
  core::Grid2T grid = core::Grid2T::make({0, 1, 3}, {0, 1, 3});
  std::string source;
  continuity::ManufacturedCurrent manufactured;
  fs::path file;
  double alpha = 1.0;
  double beta = 1.0;
  bool ehrenfest = false;
  double a1 = 1.0, a2 = 0.0, offset = 0.0, stiffness = 1.0;
  bool write_current = false;
};

ContinuityParams parse_continuity(const ScenarioConfig& cfg) {
  ContinuityParams p;
  p.grid = time_grid(cfg, true);
  p.source = choose(cfg, "current", "source", {"manufactured", "file"}, "current source");
  if (p.source == "manufactured") {
    p.manufactured.a = cfg.number("current", "a", 1.0);
    p.manufactured.b = cfg.number("current", "b", 1.0);
    p.manufactured.charge = cfg.number("current", "charge", 0.0);
    p.manufactured.source = cfg.number("current", "source_strength", 0.0);
  } else {
    p.file = cfg.text("current", "path");
    if (p.file.is_relative()) p.file = fs::path(cfg.origin()).parent_path() / p.file;
  }
  p.alpha = cfg.number("charges", "alpha", 1.0);
  p.beta = cfg.number("charges", "beta", 1.0);
  p.ehrenfest = cfg.has_section("ehrenfest");
  if (p.ehrenfest) {
    p.a1 = cfg.number("ehrenfest", "a1", 1.0);
    p.a2 = cfg.number("ehrenfest", "a2", 0.0);
    p.offset = cfg.number("ehrenfest", "offset", 0.0);
    p.stiffness = cfg.number("ehrenfest", "stiffness", 1.0);
  }
  p.write_current = cfg.flag("output", "current", false);
  return p;
}

json run_continuity(const ScenarioConfig& cfg, Artifacts& out) {
  const ContinuityParams p = parse_continuity(cfg);
  const continuity::CurrentField j = p.source == "manufactured"
                                         ? continuity::manufactured_current(p.grid, p.manufactured)
                                         : read_current_csv(p.file, p.grid);
  const auto ch = continuity::charges(j, p.alpha, p.beta);

  CsvTable q1({"t1", "Q1", "dQ1"});
  for (std::size_t i = 0; i < p.grid.n1(); ++i) q1.add_row({p.grid.t1().at(i), ch.Q1[i], ch.dQ1[i]});
  CsvTable q2({"t2", "Q2", "dQ2"});
  for (std::size_t i = 0; i < p.grid.n2(); ++i) q2.add_row({p.grid.t2().at(i), ch.Q2[i], ch.dQ2[i]});
  out.write("q1.csv", q1.text());
  out.write("q2.csv", q2.text());
  if (p.write_current) out.write("current.csv", write_current_csv(j));

  json res = {{"charges",
               {{"dQ1_residual", ch.dQ1_residual},
                {"dQ2_residual", ch.dQ2_residual},
                {"alpha", ch.alpha},
                {"beta", ch.beta},
                {"Q_total_initial", ch.Q_total(0, 0)},
                {"boundary_flux_1", ch.boundary_flux_1},
                {"boundary_flux_2", ch.boundary_flux_2},
                {"warnings", ch.warnings}}}};
  if (p.ehrenfest) {
    core::PlaneSamples<double> mean(p.grid.n1(), p.grid.n2());
    for (std::size_t i = 0; i < p.grid.n1(); ++i) {
      for (std::size_t k = 0; k < p.grid.n2(); ++k) {
        mean(i, k) = p.offset + p.a1 * std::cos(p.grid.t1().at(i)) + p.a2 * std::cos(p.grid.t2().at(k));
      }
    }
    const double offset = p.offset, stiffness = p.stiffness;
    const continuity::DiagonalForce force{[=](double x) { return -stiffness * (x - offset); }, {}};
    const auto e = continuity::ehrenfest_limit_residual(core::Grid2T::make(p.grid.t1(), p.grid.t2()), mean, force);
    res["ehrenfest"] = {{"mixed_partial", e.mixed_partial},     {"cross_defect_1", e.cross_defect_1},
                        {"cross_defect_2", e.cross_defect_2},   {"f1_constant", e.f1_constant},
                        {"f2_constant", e.f2_constant},         {"consistent", e.consistent}};
  }
  return res;
}

// ---------------------------------------------------------------------------
// dirac

struct DiracParams {
  dirac::Vec3 k = dirac::Vec3::Zero();
  double m = 0.0;
  double tol = 1e-10;
  double minus_scale = 1.0;
  double minus_phase = 0.0;
  std::string search = "none";
  double fd_step = 1e-4;
  double alpha = 1.0;
  double beta = 1.0;
  core::Grid2T grid = core::Grid2T::make({0, 1, 3}, {0, 1, 3});
};

DiracParams parse_dirac(const ScenarioConfig& cfg) {
  DiracParams p;
  const auto k = cfg.numbers("wave", "k");
  if (k.size() != 3) throw ConfigError(cfg.where("wave", "k") + "[wave] k needs three entries");
  p.k = dirac::Vec3(k[0], k[1], k[2]);
  p.m = cfg.number("wave", "m");
  if (p.m < 0.0) throw ConfigError(cfg.where("wave", "m") + "[wave] m must be >= 0");
  p.tol = cfg.number("wave", "tol", p.tol);
  p.minus_scale = cfg.number("wave", "minus_scale", 1.0);
  p.minus_phase = cfg.number("wave", "minus_phase", 0.0);
  if (cfg.has("wave", "search")) p.search = choose(cfg, "wave", "search", {"none", "hold", "violate"}, "search mode");
  p.fd_step = cfg.number("checks", "fd_step", p.fd_step);
  if (!(p.fd_step > 0.0)) throw ConfigError(cfg.where("checks", "fd_step") + "[checks] fd_step must be > 0");
  p.alpha = cfg.number("charges", "alpha", 1.0);
  p.beta = cfg.number("charges", "beta", 1.0);
  p.grid = time_grid(cfg, true);
  return p;
}

json spinor_json(const dirac::Spinor& s) {
  return {{s(0).real(), s(0).imag()}, {s(1).real(), s(1).imag()}};
}

json run_dirac(const ScenarioConfig& cfg, Artifacts& out) {
  const DiracParams p = parse_dirac(cfg);
  dirac::PlaneWaveSolution sol = dirac::solve_plane_wave(p.k, p.m, p.tol).with_minus(p.minus_scale, p.minus_phase);
  double scale = p.minus_scale, phase = p.minus_phase;
  if (p.search != "none") {
    const auto found = dirac::search_positivity(sol, p.search == "hold");
    sol = found.solution;
    scale *= found.scale;
    phase += found.phase;
  }
  const auto pos = dirac::positivity_check(sol, p.grid);
  const auto dens = dirac::dirac_density_separability(sol, p.grid, p.alpha, p.beta);
  out.write("current.csv", write_current_csv(dirac::sample_current(sol, p.grid)));

  return {{"clifford_defect", dirac::clifford_defect(dirac::gamma_set())},
          {"kernel_residual", dirac::kernel_residual(sol)},
          {"psi_plus", spinor_json(sol.psi_plus)},
          {"psi_minus", spinor_json(sol.psi_minus)},
          {"minus_scale", scale},
          {"minus_phase", phase},
          {"conservation_residual", dirac::conservation_residual(sol, p.grid, p.fd_step)},
          {"conservation_residual_real_part",
           dirac::conservation_residual(sol, p.grid, p.fd_step, dirac::CurrentPart::real)},
          {"positivity",
           {{"lhs_im", pos.lhs_im},
            {"rhs_im", pos.rhs_im},
            {"lhs_re", pos.lhs_re},
            {"rhs_re", pos.rhs_re},
            {"holds", pos.holds()},
            {"min_j1", pos.min_j1},
            {"min_j2", pos.min_j2},
            {"witness", {pos.witness(0), pos.witness(1), pos.witness(2)}}}},
          {"density",
           {{"separability_residual", dens.separability.residual},
            {"P_separability_residual", dens.P_separability.residual},
            {"dQ1_residual", dens.charges.dQ1_residual},
            {"dQ2_residual", dens.charges.dQ2_residual},
            {"boundary_flux_1", dens.charges.boundary_flux_1},
            {"boundary_flux_2", dens.charges.boundary_flux_2}}},
          {"hermiticity_defect", dirac::hermiticity_defect(p.k(1), p.k(2), p.m)}};
}

// ---------------------------------------------------------------------------
// mass-spectrum

struct MassParams {
  double m = 1.0;
  core::Axis omega;
  double hbar = 1.0;
  double c = 1.0;
};

MassParams parse_mass_spectrum(const ScenarioConfig& cfg) {
  MassParams p;
  p.m = cfg.number("sweep", "m");
  p.omega = cfg.axis("sweep", "omega");
  p.hbar = cfg.number("sweep", "hbar", 1.0);
  p.c = cfg.number("sweep", "c", 1.0);
  if (p.m < 0.0) throw ConfigError(cfg.where("sweep", "m") + "[sweep] m must be >= 0");
  if (p.omega.min < 0.0) throw ConfigError(cfg.where("sweep", "omega") + "[sweep] omega must be >= 0");
  if (!(p.hbar > 0.0) || !(p.c > 0.0)) throw ConfigError("[sweep] hbar and c must be > 0");
  return p;
}

json run_mass_spectrum(const ScenarioConfig& cfg, Artifacts& out) {
  const MassParams p = parse_mass_spectrum(cfg);
  CsvTable table({"omega", "m_eff_squared", "m_eff", "tachyonic", "tau", "R", "ctau_exceeds_R",
                  "classification_agrees"});
  std::size_t tachyonic = 0, disagreements = 0;
  json first_disagreement;
  for (std::size_t i = 0; i < p.omega.count; ++i) {
    const auto r = dirac::effective_mode_mass(p.m, p.omega.at(i), p.hbar, p.c);
    tachyonic += r.tachyonic;
    if (!r.classification_agrees) {
      if (disagreements++ == 0) first_disagreement = r.omega;
    }
    table.add_row({r.omega, r.m_eff_squared, r.m_eff, double(r.tachyonic), r.tau, r.R,
                   double(p.c * r.tau > r.R), double(r.classification_agrees)});
  }
  out.write("spectrum.csv", table.text());
  return {{"samples", p.omega.count},
          {"tachyonic", tachyonic},
          {"cutoff_omega", p.m * p.c * p.c / p.hbar},
          {"classification_disagreements", disagreements},
          {"first_disagreement_omega", first_disagreement}};
}

template <typename Parse>
void check_only(const ScenarioConfig& cfg, Parse parse) {
  (void)parse(cfg);
}

}  // namespace

const std::vector<CommandEntry>& commands() {
  static const std::vector<CommandEntry> table{
      {"classical-check", [](const ScenarioConfig& c) { check_only(c, parse_classical_check); }, run_classical_check},
      {"classical-integrate", [](const ScenarioConfig& c) { check_only(c, parse_classical_integrate); },
       run_classical_integrate},
      {"quantum-fluct", [](const ScenarioConfig& c) { check_only(c, parse_quantum_fluct); }, run_quantum_fluct},
      {"uncertainty", [](const ScenarioConfig& c) { check_only(c, parse_uncertainty); }, run_uncertainty},
      {"continuity", [](const ScenarioConfig& c) { check_only(c, parse_continuity); }, run_continuity},
      {"dirac", [](const ScenarioConfig& c) { check_only(c, parse_dirac); }, run_dirac},
      {"mass-spectrum", [](const ScenarioConfig& c) { check_only(c, parse_mass_spectrum); }, run_mass_spectrum},
  };
  return table;
}

}  // namespace bitempo::cli::detail
