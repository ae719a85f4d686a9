#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "bitempo/core/errors.hpp"
#include "bitempo/quantum/system.hpp"
#include "bitempo/quantum/uncertainty.hpp"
#include "oracles.hpp"

using namespace bitempo;
using namespace bitempo::quantum;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

TwoTimeQuantumSystem two_level() {
  Eigen::MatrixXcd x0(2, 2);
  x0 << 0.0, 1.0, 1.0, 0.0;
  return TwoTimeQuantumSystem::make({0.0, 1.0}, {0.0, 2.0}, x0);
}

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

TwoTimeQuantumSystem random_system(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> e1(static_cast<std::size_t>(n)), e2(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    e1[static_cast<std::size_t>(k)] = u(rng);
    e2[static_cast<std::size_t>(k)] = u(rng);
  }
  return TwoTimeQuantumSystem::make(e1, e2, random_hermitian(n, rng));
}

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd psi(n);
  for (int k = 0; k < n; ++k) psi(k) = cd(g(rng), g(rng));
  return StateVector::normalized(psi);
}

// Accumulated phase of the evolved element along the ray from 0 to t.
double winding(const UncertaintyBudget& b) {
  Eigen::MatrixXcd x0(2, 2);
  x0 << 0.0, 1.0, 1.0, 0.0;
  const auto sys = TwoTimeQuantumSystem::make({b.dE1, 0.0}, {b.dE2, 0.0}, x0);
  const int steps = 4000;
  double total = 0.0;
  cd prev = evolve_element(sys, 0, 1, {0.0, 0.0}, b.hbar);
  for (int k = 1; k <= steps; ++k) {
    const double lambda = static_cast<double>(k) / steps;
    const cd next = evolve_element(sys, 0, 1, {lambda * b.t.t1, lambda * b.t.t2}, b.hbar);
    total += std::arg(next / prev);
    prev = next;
  }
  return std::abs(total);
}

}  // namespace

TEST_CASE("commuting generator check") {
  std::mt19937_64 rng(1);
  Eigen::MatrixXcd d1 = Eigen::MatrixXcd::Zero(3, 3);
  Eigen::MatrixXcd d2 = Eigen::MatrixXcd::Zero(3, 3);
  d1.diagonal() << 1.0, -2.0, 0.5;
  d2.diagonal() << 3.0, 0.0, 7.0;
  CHECK(check_generator_consistency(d1, d2) == 0.0);

  const Eigen::MatrixXcd h1 = random_hermitian(4, rng);
  const Eigen::MatrixXcd h2 = 0.7 * h1 + 2.5 * Eigen::MatrixXcd::Identity(4, 4);
  CHECK(check_generator_consistency(h1, h2) < 1e-12);

  Eigen::MatrixXcd sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  CHECK(std::abs(check_generator_consistency(sx, sz) - 2.0) < 1e-15);

  Eigen::MatrixXcd bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(check_generator_consistency(bad, sz), ContractViolation);
  CHECK_THROWS_AS(check_generator_consistency(sx, Eigen::MatrixXcd::Identity(3, 3)), ContractViolation);
}

TEST_CASE("system construction validates input") {
  Eigen::MatrixXcd x0(2, 2);
  x0 << 0.0, cd(0.0, 1.0), cd(0.0, 1.0), 0.0;
  CHECK_THROWS_AS(TwoTimeQuantumSystem::make({0.0, 1.0}, {0.0, 2.0}, x0), ContractViolation);
  CHECK_THROWS_AS(TwoTimeQuantumSystem::make({0.0}, {0.0}, Eigen::MatrixXcd::Zero(1, 1)), ContractViolation);
  CHECK_THROWS_AS(TwoTimeQuantumSystem::make({0.0, 1.0}, {0.0}, Eigen::MatrixXcd::Zero(2, 2)), ContractViolation);
}

TEST_CASE("element evolution examples") {
  const auto sys = two_level();
  CHECK(std::abs(evolve_element(sys, 1, 0, {2 * kPi, 0.0}) - 1.0) < 1e-15);
  for (double t : {0.0, 1.0, 13.0}) {
    CHECK(evolve_element(sys, 0, 0, {t, -t}) == sys.x0()(0, 0));
    CHECK(std::abs(std::abs(evolve_element(sys, 1, 0, {t, 2 * t}, 0.3)) - 1.0) < 1e-15);
  }
  CHECK_THROWS_AS(evolve_element(sys, 2, 0, {0.0, 0.0}), ContractViolation);
  CHECK_THROWS_AS(evolve_element(sys, 0, 1, {0.0, 0.0}, 0.0), ContractViolation);
}

TEST_CASE("second derivatives of elements follow the double commutator") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto sys = random_system(4, rng);
  const double hbar = 0.8;
  const double h = 1e-3;
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) {
      if (n == m) continue;
      const auto d = spacing(sys, n, m);
      const double t1 = u(rng);
      const double t2 = u(rng);
      auto x = [&](double a, double b) { return evolve_element(sys, n, m, {a, b}, hbar); };
      const cd d12 = (x(t1 + h, t2 + h) - x(t1 + h, t2 - h) - x(t1 - h, t2 + h) + x(t1 - h, t2 - h)) / (4 * h * h);
      const cd d11 = (x(t1 + h, t2) - 2.0 * x(t1, t2) + x(t1 - h, t2)) / (h * h);
      const cd d22 = (x(t1, t2 + h) - 2.0 * x(t1, t2) + x(t1, t2 - h)) / (h * h);
      const cd expected12 = -x(t1, t2) * d.d1 * d.d2 / (hbar * hbar);
      CHECK(std::abs(d12 - expected12) <= 1e-4 * std::abs(expected12));
      CHECK(std::abs(d11 + x(t1, t2) * d.d1 * d.d1 / (hbar * hbar)) <= 1e-4 * std::abs(x(t1, t2)) * d.d1 * d.d1 / (hbar * hbar));
      CHECK(std::abs(d22 + x(t1, t2) * d.d2 * d.d2 / (hbar * hbar)) <= 1e-4 * std::abs(x(t1, t2)) * d.d2 * d.d2 / (hbar * hbar));

      // First-derivative geometric condition.
      const cd dx1 = (x(t1 + h, t2) - x(t1 - h, t2)) / (2 * h);
      const cd dx2 = (x(t1, t2 + h) - x(t1, t2 - h)) / (2 * h);
      CHECK(std::abs(d.d1 * dx2 - d.d2 * dx1) < 1e-4);

      // The element matrix of F_12 equals the closed-form second derivative.
      const Eigen::MatrixXcd f12 = acceleration_operator(sys, 1, 2, {t1, t2}, hbar);
      CHECK(std::abs(f12(n, m) - expected12) < 1e-12);
      const Eigen::MatrixXcd f21 = acceleration_operator(sys, 2, 1, {t1, t2}, hbar);
      CHECK(std::abs(f12(n, m) - f21(n, m)) < 1e-12);
    }
  }
}

TEST_CASE("element characteristic examples") {
  const auto sys = two_level();
  const auto ec = element_characteristic(sys, 1, 0);
  CHECK(ec.field == Eigen::Vector2d(2.0, -1.0));
  CHECK(std::abs(ec.norm - std::sqrt(5.0)) < 1e-15);
  CHECK(std::abs(std::cos(ec.theta) - 1.0 / std::sqrt(5.0)) < 1e-15);
  CHECK(std::abs(std::sin(ec.theta) - 2.0 / std::sqrt(5.0)) < 1e-15);
  CHECK_FALSE(ec.degenerate);
  CHECK(element_characteristic(sys, 1, 1).degenerate);
  CHECK_THROWS_AS(rotate_times(element_characteristic(sys, 0, 0), {1.0, 1.0}), DegeneratePointError);
}

TEST_CASE("proportional spectra share one direction") {
  const std::vector<double> e2{0.0, 0.7, 1.9, 3.2, 4.0};
  const double eps = 0.37;
  std::vector<double> e1;
  for (double e : e2) e1.push_back(eps * e + 5.0);
  const auto sys = TwoTimeQuantumSystem::make(e1, e2, Eigen::MatrixXcd::Identity(5, 5));
  // theta^{nm} and theta^{mn} describe the same axis; compare pairs n > m.
  const double theta = element_characteristic(sys, 1, 0).theta;
  for (int n = 0; n < 5; ++n) {
    for (int m = 0; m < n; ++m) CHECK(std::abs(element_characteristic(sys, n, m).theta - theta) < 1e-12);
  }
}

TEST_CASE("time rotation") {
  ElementCharacteristic ec;
  ec.theta = 0.0;
  ec.degenerate = false;
  const auto r = rotate_times(ec, {1.5, -2.0});
  CHECK(r.tau1 == 1.5);
  CHECK(r.tau2 == -2.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    ec.theta = u(rng);
    const core::TimePlanePoint t{u(rng), u(rng)};
    const auto s = rotate_times(ec, t);
    CHECK(std::abs(s.tau1 * s.tau1 + s.tau2 * s.tau2 - (t.t1 * t.t1 + t.t2 * t.t2)) < 1e-12);
  }
}

TEST_CASE("elements depend on tau1 only") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const auto sys = random_system(4, rng);
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) {
      const auto ec = element_characteristic(sys, n, m);
      if (ec.degenerate) continue;
      const double c = std::cos(ec.theta);
      const double s = std::sin(ec.theta);
      for (int k = 0; k < 100; ++k) {
        const double tau1 = u(rng);
        const double a = u(rng);
        const double b = u(rng);
        const core::TimePlanePoint pa{c * tau1 - s * a, s * tau1 + c * a};
        const core::TimePlanePoint pb{c * tau1 - s * b, s * tau1 + c * b};
        CHECK(std::abs(evolve_element(sys, n, m, pa) - evolve_element(sys, n, m, pb)) < 1e-12);
        CHECK(std::abs(rotate_times(ec, pa).tau1 - tau1) < 1e-12);
      }
    }
  }
}

TEST_CASE("variance of an eigenstate with diagonal observable vanishes") {
  Eigen::MatrixXcd x0 = Eigen::MatrixXcd::Zero(3, 3);
  x0.diagonal() << 1.0, 2.0, -1.0;
  const auto sys = TwoTimeQuantumSystem::make({0.0, 1.0, 3.0}, {2.0, -1.0, 0.5}, x0);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(3);
  psi(1) = 1.0;
  const auto grid = core::Grid2T::make({0.0, 5.0, 11}, {-5.0, 5.0, 11});
  const auto trace = variance_trace(sys, StateVector::make(psi), grid);
  for (double v : trace.variance.data()) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("two-level variance is sin squared") {
  const auto sys = two_level();
  Eigen::VectorXcd psi(2);
  psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto grid = core::Grid2T::make({0.0, 3.0, 31}, {0.0, 3.0, 31});
  const auto trace = variance_trace(sys, StateVector::make(psi), grid);
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      const auto t = grid.point(i, j);
      const double s = std::sin(t.t1 + 2.0 * t.t2);
      CHECK(std::abs(trace.variance(i, j) - s * s) < 1e-12);
      CHECK(std::abs(trace.mean(i, j).imag()) < 1e-12);
      CHECK(trace.variance(i, j) >= -1e-10);
    }
  }
}

TEST_CASE("variance trace matches dense state evolution") {
  std::mt19937_64 rng(5);
  const int n = 5;
  const auto sys = random_system(n, rng);
  const auto psi = random_state(n, rng);
  const double hbar = 1.3;

  // Dense generators in a random basis.
  const Eigen::MatrixXcd v = oracle::random_unitary(n, rng);
  Eigen::MatrixXcd d1 = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd d2 = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    d1(k, k) = sys.e1()[static_cast<std::size_t>(k)];
    d2(k, k) = sys.e2()[static_cast<std::size_t>(k)];
  }
  const Eigen::MatrixXcd h1 = v * d1 * v.adjoint();
  const Eigen::MatrixXcd h2 = v * d2 * v.adjoint();
  const Eigen::MatrixXcd x = v * sys.x0() * v.adjoint();
  const Eigen::VectorXcd psi_dense = v * psi.psi();
  CHECK(check_generator_consistency(h1, h2, 1e-10) < 1e-12);

  const auto grid = core::Grid2T::make({-2.0, 2.0, 9}, {0.0, 3.0, 9});
  const auto trace = variance_trace(sys, psi, grid, hbar);
  for (std::size_t i = 0; i < grid.n1(); ++i) {
    for (std::size_t j = 0; j < grid.n2(); ++j) {
      const auto t = grid.point(i, j);
      const Eigen::VectorXcd evolved = oracle::evolve_state(h1, h2, psi_dense, t.t1, t.t2, hbar);
      CHECK(std::abs(evolved.norm() - 1.0) < 1e-12);
      const auto [m1, m2] = oracle::moments(x, evolved);
      CHECK(std::abs(trace.mean(i, j) - m1) < 1e-10);
      CHECK(std::abs(trace.second_moment(i, j) - m2) < 1e-10);
      CHECK(std::abs(trace.variance(i, j) - (m2.real() - std::norm(m1))) < 1e-10);
      CHECK(trace.variance(i, j) >= -1e-10);
    }
  }
}

TEST_CASE("two-time Ehrenfest relation") {
  const auto sys = two_level();
  Eigen::VectorXcd raw(2);
  raw << 0.6, cd(0.0, 0.8);
  const auto psi = StateVector::make(raw);
  const double h = 1e-3;
  auto mean = [&](double a, double b) { return moments(sys, psi, {a, b}).first; };
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const double t1 = u(rng);
    const double t2 = u(rng);
    const cd d11 = (mean(t1 + h, t2) - 2.0 * mean(t1, t2) + mean(t1 - h, t2)) / (h * h);
    const cd d22 = (mean(t1, t2 + h) - 2.0 * mean(t1, t2) + mean(t1, t2 - h)) / (h * h);
    const cd d12 = (mean(t1 + h, t2 + h) - mean(t1 + h, t2 - h) - mean(t1 - h, t2 + h) + mean(t1 - h, t2 - h)) / (4 * h * h);
    CHECK(std::abs(d11 - expected_acceleration(sys, psi, 1, 1, {t1, t2})) < 1e-4);
    CHECK(std::abs(d22 - expected_acceleration(sys, psi, 2, 2, {t1, t2})) < 1e-4);
    CHECK(std::abs(d12 - expected_acceleration(sys, psi, 1, 2, {t1, t2})) < 1e-4);
  }
}

TEST_CASE("visibility examples") {
  CHECK(uncertainty_visibility({1.0, 2.0, 0.0, 0.0, {0.0, 0.0}, 1.0}).visibility == Visibility::frozen);
  const auto b = uncertainty_visibility({1.0, 2.0, 0.0, 0.0, {2 * kPi, 0.0}, 1.0});
  CHECK(b.phase == 2 * kPi);
  CHECK(b.visibility == Visibility::oscillating);
  CHECK(uncertainty_visibility({1.0, 0.0, 0.0, 0.0, {3.0, 0.0}, 1.0}).visibility == Visibility::threshold);
  CHECK_THROWS_AS(uncertainty_visibility({1.0, 0.0, 0.0, 0.0, {3.0, 0.0}, 0.0}), ContractViolation);
}

TEST_CASE("visibility agrees with the winding counter") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  std::uniform_real_distribution<double> t(-4.0, 4.0);
  std::uniform_real_distribution<double> hb(0.2, 3.0);
  for (int k = 0; k < 50; ++k) {
    const UncertaintyBudget b{e(rng), e(rng), 0.0, 0.0, {t(rng), t(rng)}, hb(rng)};
    const double w = winding(b);
    const Visibility expected = w >= 2 * kPi ? Visibility::oscillating
                                : w < 0.2 * kPi ? Visibility::frozen
                                                : Visibility::threshold;
    CHECK(uncertainty_visibility(b).visibility == expected);
  }
}

TEST_CASE("angle and width worked values") {
  const UncertaintyBudget b{1.0, 2.0, 0.1, 0.2, {3.0, 4.0}, 1.0};
  const auto w = angle_and_width(b);
  CHECK(std::abs(w.cos_phi - 1.0 / (5.0 * std::sqrt(5.0))) < 1e-12);
  CHECK(std::abs(w.bound - 0.1) < 1e-12);
  CHECK(w.dphi_lowest_order <= w.bound);
  CHECK(w.dphi_exact <= w.bound);
}

TEST_CASE("angle width domain errors") {
  CHECK_THROWS_AS(angle_and_width({1.0, 0.0, 0.1, 0.0, {0.5, 0.0}, 1.0}), DomainError);
  CHECK_THROWS_AS(angle_and_width({0.0, 0.0, 0.1, 0.0, {3.0, 0.0}, 1.0}), DomainError);
  CHECK_THROWS_AS(angle_and_width({1.0, 0.0, 0.1, 0.0, {1.0, 0.0}, 1.0}), DegeneratePointError);
  try {
    (void)angle_and_width({1.0, 0.0, 0.1, 0.0, {0.5, 0.0}, 1.0});
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("<= 1") != std::string::npos);
  }
}

TEST_CASE("lowest-order width never exceeds the bound") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  std::uniform_real_distribution<double> ratio(1.0 + 1e-9, 10.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  for (int k = 0; k < 200; ++k) {
    const double d1 = e(rng);
    const double d2 = e(rng);
    const double t = ratio(rng) / std::hypot(d1, d2);
    const double a = angle(rng);
    const UncertaintyBudget b{d1, d2, e(rng) * 0.1, e(rng) * 0.1, {t * std::cos(a), t * std::sin(a)}, 1.0};
    const auto w = angle_and_width(b);
    CHECK(w.dphi_lowest_order <= w.bound * (1.0 + 1e-12));
    // The exact width stays below the bound only once t |dE| >= sqrt(2) hbar.
    const double te = t * std::hypot(d1, d2);
    if (te >= std::sqrt(2.0) * (1.0 + 1e-12)) CHECK(w.exact_within_bound);
    if (te < std::sqrt(2.0) * (1.0 - 1e-12)) CHECK_FALSE(w.exact_within_bound);
  }
}

TEST_CASE("spacing statistics of a populated state") {
  const auto sys = TwoTimeQuantumSystem::make({0.0, 1.0, 3.0}, {0.0, 2.0, 2.5}, Eigen::MatrixXcd::Identity(3, 3));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(3, 1.0 / std::sqrt(3.0));
  const auto s = spacing_statistics(sys, StateVector::make(psi));
  CHECK(s.pairs == 3);
  // |Delta_1| over pairs: 1, 3, 2.
  CHECK(std::abs(s.mean_d1 - 2.0) < 1e-12);
  CHECK(std::abs(s.std_d1 - std::sqrt(2.0 / 3.0)) < 1e-12);
  Eigen::VectorXcd single = Eigen::VectorXcd::Zero(3);
  single(0) = 1.0;
  CHECK_THROWS_AS(spacing_statistics(sys, StateVector::make(single)), DomainError);
}
