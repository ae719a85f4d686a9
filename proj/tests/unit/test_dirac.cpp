#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "bitempo/core/errors.hpp"
#include "bitempo/dirac/gamma.hpp"
#include "bitempo/dirac/mode_mass.hpp"
#include "bitempo/dirac/plane_wave.hpp"
#include "oracles.hpp"

using namespace bitempo;
using dirac::Vec3;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using cd = std::complex<double>;

namespace {

// Pauli matrices written out independently of the library.
Eigen::Matrix2cd pauli(int n) {
  Eigen::Matrix2cd s;
  if (n == 1) s << 0, 1, 1, 0;
  if (n == 2) s << 0, cd(0, -1), cd(0, 1), 0;
  if (n == 3) s << 1, 0, 0, -1;
  return s;
}

dirac::Vec3 random_on_shell(std::mt19937_64& rng, double m) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (;;) {
    const double k1 = u(rng), k2 = u(rng);
    const double s = k1 * k1 + k2 * k2 - m * m;
    if (s < 0.05) continue;
    return {k1, k2, (u(rng) > 0 ? 1.0 : -1.0) * std::sqrt(s)};
  }
}

// Term-by-term expansion of Im[i Psi^dag(-x) g3 g_mu Psi(x)] for arbitrary
// spinors a (plus) and b (minus), written from the definition.
Vec3 expanded_current(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b, double kx) {
  const Eigen::Matrix2cd g3 = cd(0, 1) * pauli(3);
  const Eigen::Matrix2cd g[3] = {pauli(1), pauli(2), g3};
  Vec3 j;
  for (int mu = 0; mu < 3; ++mu) {
    const Eigen::Matrix2cd mm = g3 * g[mu];
    const cd aa = a.dot(mm * a), bb = b.dot(mm * b), ab = a.dot(mm * b), ba = b.dot(mm * a);
    const cd q = cd(0, 1) * (std::polar(1.0, 2 * kx) * aa + std::polar(1.0, -2 * kx) * bb + ab + ba);
    j(mu) = q.imag();
  }
  return j;
}

}  // namespace

TEST_CASE("Clifford identities hold exactly") {
  const auto gs = dirac::gamma_set();
  CHECK(dirac::clifford_defect(gs) == 0.0);
  CHECK((gs.g[0] * gs.g[0] + gs.g[0] * gs.g[0] - 2.0 * Eigen::Matrix2cd::Identity()).norm() == 0.0);
  CHECK((gs.g[2] * gs.g[2] + gs.g[2] * gs.g[2] + 2.0 * Eigen::Matrix2cd::Identity()).norm() == 0.0);
  CHECK((gs.g[0] * gs.g[1] + gs.g[1] * gs.g[0]).norm() == 0.0);
  CHECK(gs.g[0] == pauli(1));
  CHECK(gs.g[1] == pauli(2));
  CHECK(gs.g[2] == cd(0, 1) * pauli(3));
}

TEST_CASE("plane-wave spinors on shell") {
  const auto sol = dirac::solve_plane_wave({1, 1, 1}, 1.0);
  CHECK(dirac::kernel_residual(sol) < 1e-12);
  for (const auto& psi : {sol.psi_plus, sol.psi_minus}) {
    CHECK_THAT(psi.norm(), WithinAbs(1.0, 1e-14));
    CHECK(psi(0).imag() == 0.0);
    CHECK(psi(0).real() > 0.0);
  }
  // kernel of a singular 2x2 matrix [[p, q], ...] is spanned by (-q, p)
  const Eigen::Matrix2cd op = -(pauli(1) + pauli(2) - cd(0, 1) * pauli(3)) - Eigen::Matrix2cd::Identity();
  const Eigen::Vector2cd oracle_kernel(-op(0, 1), op(0, 0));
  CHECK(std::abs(oracle_kernel.normalized().dot(sol.psi_plus)) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("off-shell wavevectors are rejected with their residual") {
  try {
    dirac::solve_plane_wave({1, 1, 0}, 1.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("= 1") != std::string::npos);
  }
  CHECK_THROWS_AS(dirac::solve_plane_wave({0, 0, 0}, 0.0), DegeneratePointError);
}

TEST_CASE("vanishing determinant is the on-shell condition") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 20; ++n) {
    const double m = std::abs(u(rng));
    const Vec3 k = random_on_shell(rng, m);
    const Eigen::Matrix2cd slash = pauli(1) * k(0) + pauli(2) * k(1) - cd(0, 1) * pauli(3) * k(2);
    for (int sign : {1, -1}) {
      const Eigen::Matrix2cd op = (sign > 0 ? Eigen::Matrix2cd(-slash) : slash) - m * Eigen::Matrix2cd::Identity();
      CHECK(std::abs(oracle::cofactor_determinant(op)) < 1e-12);
      CHECK(std::abs(core::determinant(core::ComplexMatrix(dirac::branch_operator(k, m, sign)))) < 1e-12);
    }
  }
  for (int n = 0; n < 20; ++n) {
    const Vec3 k(u(rng), u(rng), u(rng));
    const double m = std::abs(u(rng));
    const double off = k(0) * k(0) + k(1) * k(1) - k(2) * k(2) - m * m;
    for (int sign : {1, -1}) {
      const cd det = core::determinant(core::ComplexMatrix(dirac::branch_operator(k, m, sign)));
      CHECK_THAT(det.real(), WithinAbs(-off, 1e-12));
      CHECK(std::abs(det) > 1e-12);
    }
  }
}

TEST_CASE("current from the definition matches the expansion") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 0; n < 20; ++n) {
    dirac::PlaneWaveSolution sol;
    sol.k = Vec3(u(rng), u(rng), u(rng));
    sol.psi_plus = Eigen::Vector2cd(cd(g(rng), g(rng)), cd(g(rng), g(rng)));
    sol.psi_minus = Eigen::Vector2cd(cd(g(rng), g(rng)), cd(g(rng), g(rng)));
    const auto expansion = dirac::current_expansion(sol);
    for (int p = 0; p < 5; ++p) {
      const Vec3 x(u(rng), u(rng), u(rng));
      const double kx = sol.k.dot(x);
      const Vec3 lib = dirac::dirac_current(sol, x);
      const Vec3 ref = expanded_current(sol.psi_plus, sol.psi_minus, kx);
      CHECK((lib - ref).norm() < 1e-12);
      CHECK((expansion.at_phase(kx) - ref).norm() < 1e-12);
    }
  }
}

TEST_CASE("the two time components differ") {
  dirac::PlaneWaveSolution sol;
  sol.k = Vec3(0.3, 0.4, 0.2);
  sol.psi_plus = Eigen::Vector2cd(cd(1.0, 0.5), cd(0.2, -0.7));
  sol.psi_minus = Eigen::Vector2cd(cd(0.1, 0.3), cd(-0.4, 0.6));
  const Vec3 j = dirac::dirac_current(sol, Vec3::Zero());
  CHECK(std::abs(j(0) - j(1)) > 1e-3);
}

TEST_CASE("real diagonal product removes the cos modulation of j1") {
  dirac::PlaneWaveSolution sol;
  sol.k = Vec3(0.7, -0.2, 0.4);
  sol.psi_plus = Eigen::Vector2cd(1.0, 2.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n = 0; n < 20; ++n) {
    const Vec3 j = dirac::dirac_current(sol, Vec3(u(rng), u(rng), u(rng)));
    CHECK(std::abs(j(0)) < 1e-14);
  }
}

TEST_CASE("current conservation converges at second order") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.2, 1.2);
  const auto grid = core::Grid2T::make({-1, 1, 5}, {-1, 1, 5}, core::Axis{-1, 1, 5});
  for (int n = 0; n < 10; ++n) {
    const double m = u(rng);
    const auto sol = dirac::solve_plane_wave(random_on_shell(rng, m), m).with_minus(u(rng), 3 * u(rng));
    for (auto part : {dirac::CurrentPart::imaginary, dirac::CurrentPart::real}) {
      CHECK(dirac::conservation_residual(sol, grid, 1e-4, part) < 1e-6);
    }
    const double coarse = dirac::conservation_residual(sol, grid, 2e-2);
    const double fine = dirac::conservation_residual(sol, grid, 1e-2);
    INFO("coarse " << coarse << " fine " << fine);
    CHECK(coarse / fine > 3.5);
    CHECK(coarse / fine < 4.5);
  }
}

TEST_CASE("positivity conditions") {
  const auto grid = core::Grid2T::make({0, 12, 49}, {0, 12, 49}, core::Axis{-6, 6, 25});
  std::mt19937_64 rng(8);
  SECTION("pure plus branch: the rhs vanishes") {
    const auto sol = dirac::solve_plane_wave({1, 1, 1}, 1.0).with_minus(0.0, 0.0);
    const auto r = dirac::positivity_check(sol, grid);
    CHECK(r.rhs_im == 0.0);
    CHECK(r.rhs_re == 0.0);
    CHECK(r.lhs_im + r.lhs_re > 0.1);
    CHECK_FALSE(r.holds());
    CHECK(r.min_density_sampled < 0.0);
  }
  SECTION("searched amplitude and phase make both inequalities hold") {
    for (int n = 0; n < 5; ++n) {
      const double m = 0.5 + 0.1 * n;
      const auto base = dirac::solve_plane_wave(random_on_shell(rng, m), m);
      const auto found = dirac::search_positivity(base, true);
      INFO("margin " << found.margin);
      REQUIRE(found.margin > 0.0);
      const auto r = dirac::positivity_check(found.solution, grid);
      CHECK(r.holds());
      CHECK(r.min_j1 >= -1e-10);
      CHECK(r.min_j2 >= -1e-10);
    }
  }
  SECTION("dominant diagonal terms produce a negative sample") {
    for (int n = 0; n < 5; ++n) {
      const double m = 0.5 + 0.1 * n;
      const auto base = dirac::solve_plane_wave(random_on_shell(rng, m), m);
      const auto found = dirac::search_positivity(base, false);
      REQUIRE(found.margin < 0.0);
      const auto r = dirac::positivity_check(found.solution, grid);
      CHECK_FALSE(r.holds());
      CHECK(r.min_density_sampled < 0.0);
      const Vec3 j = dirac::dirac_current(found.solution, r.witness);
      const auto expansion = dirac::current_expansion(found.solution);
      const double s1 = expansion.cross.imag() < 0 ? -1.0 : 1.0;
      const double s2 = expansion.cross.real() < 0 ? -1.0 : 1.0;
      CHECK_THAT(std::min(s1 * j(0), s2 * j(1)), WithinAbs(r.min_density_sampled, 1e-14));
    }
  }
}

TEST_CASE("effective Hamiltonian Hermiticity") {
  CHECK(dirac::hermiticity_defect(0.0, 0.0, 1.3) == 0.0);
  CHECK(dirac::effective_hamiltonian(0.0, 0.0, 1.3) == 1.3 * pauli(1));
  // g1 g3 = sigma_1 i sigma_3 = sigma_2 is Hermitian; g1 g2 = i sigma_3 is not.
  CHECK(dirac::hermiticity_defect(0.0, 1.0, 0.0) == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 50; ++n) {
    const double k2 = u(rng), k3 = u(rng), m = std::abs(u(rng));
    const Eigen::Matrix2cd h = k2 * cd(0, 1) * pauli(3) - k3 * pauli(2) + m * pauli(1);
    CHECK((dirac::effective_hamiltonian(k2, k3, m) - h).norm() < 1e-15);
    CHECK_THAT(dirac::hermiticity_defect(k2, k3, m), WithinAbs(2.0 * std::abs(k2), 1e-15));
    CHECK(dirac::hermiticity_defect(k2, k3, m) > 0.0);
  }
}

TEST_CASE("effective mode mass") {
  CHECK(dirac::effective_mode_mass(1.0, 0.0).m_eff == 1.0);
  CHECK(dirac::effective_mode_mass(1.0, 1.0).m_eff == 0.0);
  CHECK_THAT(dirac::effective_mode_mass(1.0, 0.6).m_eff, WithinAbs(0.8, 1e-15));
  const auto zero = dirac::effective_mode_mass(1.0, 0.0);
  CHECK(std::isinf(zero.tau));
  CHECK_FALSE(zero.tachyonic);
  CHECK(dirac::effective_mode_mass(0.0, 0.5).tachyonic);
  const auto fast = dirac::effective_mode_mass(1.0, 1.5);
  CHECK(fast.tachyonic);
  CHECK(std::isnan(fast.m_eff));
  // c tau = 2 pi / 1.5 exceeds R = 1 although the mode is tachyonic
  CHECK_FALSE(fast.tachyonic_by_length);
  CHECK_FALSE(fast.classification_agrees);
  CHECK(dirac::effective_mode_mass(1.0, 0.5).classification_agrees);
  CHECK(dirac::effective_mode_mass(1.0, 7.0).classification_agrees);
  const auto units = dirac::effective_mode_mass(2.0, 3.0, 0.5, 2.0);
  CHECK_THAT(units.m_eff_squared, WithinRel(4.0 - std::pow(0.5 * 3.0 / 4.0, 2), 1e-15));
  CHECK_THAT(units.R, WithinRel(0.5 / 4.0, 1e-15));
  CHECK_THROWS_AS(dirac::effective_mode_mass(-1.0, 0.0), ContractViolation);
  CHECK_THROWS_AS(dirac::effective_mode_mass(1.0, 0.0, 0.0), ContractViolation);
}

TEST_CASE("Dirac densities are separable") {
  const auto grid = core::Grid2T::make({0, 3, 21}, {0, 3, 21}, core::Axis{-2, 2, 21});
  std::mt19937_64 rng(4);
  for (int n = 0; n < 5; ++n) {
    const auto sol = dirac::solve_plane_wave(random_on_shell(rng, 0.8), 0.8).with_minus(0.7, 1.1);
    const auto r = dirac::dirac_density_separability(sol, grid, 0.4, 0.6);
    CHECK(r.separability.residual < 1e-8);
    CHECK(r.P_separability.residual < 1e-8);
  }
  dirac::PlaneWaveSolution zero;
  zero.k = Vec3(1, 1, 1);
  zero.m = 1.0;
  const auto r = dirac::dirac_density_separability(zero, grid);
  for (double v : r.rho.data()) CHECK(v == 0.0);
}
