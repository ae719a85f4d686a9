#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "bitempo/core/errors.hpp"
#include "bitempo/core/finite_difference.hpp"
#include "bitempo/core/grid.hpp"
#include "bitempo/core/linalg.hpp"
#include "oracles.hpp"

using namespace bitempo;
using Catch::Approx;

namespace {

core::RealMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  core::RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("central difference is exact for quadratics") {
  auto f = [](double x) { return x * x; };
  CHECK(std::abs(core::central_difference(f, 1.0, 1e-4) - 2.0) < 1e-7);
  auto g = [](double x) { return 3.0 * x * x - 2.0 * x + 5.0; };
  for (double at : {-3.0, 0.0, 0.25, 7.0}) {
    CHECK(std::abs(core::central_difference(g, at, 1e-3) - (6.0 * at - 2.0)) < 1e-9);
  }
}

TEST_CASE("central difference of a constant is zero") {
  auto f = [](double) { return 4.2; };
  CHECK(core::central_difference(f, 3.0, 1e-5) == 0.0);
}

TEST_CASE("central difference of sine matches cosine") {
  auto f = [](double x) { return std::sin(x); };
  CHECK(std::abs(core::central_difference(f, 0.0, 1e-3) - 1.0) < 1e-6);
  for (double at : {0.3, 1.1, -2.0}) {
    CHECK(std::abs(core::central_difference(f, at, 1e-4) - std::cos(at)) < 1e-8);
  }
}

TEST_CASE("central difference rejects bad input") {
  auto f = [](double x) { return 1.0 / x; };
  CHECK_THROWS_AS(core::central_difference(f, 0.0 + 1e-3, 1e-3), EvaluationError);
  auto g = [](double x) { return x; };
  CHECK_THROWS_AS(core::central_difference(g, 0.0, 0.0), ContractViolation);
  CHECK_THROWS_AS(core::central_difference(g, 0.0, -1.0), ContractViolation);
}

TEST_CASE("central difference differentiates vector maps entrywise") {
  auto f = [](double x) { return Eigen::Vector2d(x * x, std::sin(x)); };
  const Eigen::Vector2d d = core::central_difference(f, 0.5, 1e-5);
  CHECK(std::abs(d(0) - 1.0) < 1e-9);
  CHECK(std::abs(d(1) - std::cos(0.5)) < 1e-9);
}

TEST_CASE("determinant of simple matrices") {
  CHECK(core::determinant(core::RealMatrix(core::RealMatrix::Identity(4, 4))) == 1.0);
  core::RealMatrix m(3, 3);
  m << 1, 2, 3, 4, 5, 6, 1, 2, 3;
  CHECK(core::determinant(m) == 0.0);
  CHECK_THROWS_AS(core::determinant(core::RealMatrix(core::RealMatrix::Zero(2, 3))), ContractViolation);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const core::RealMatrix m = random_matrix(n, rng);
      const double expected = oracle::cofactor_determinant(m);
      CHECK(std::abs(core::determinant(m) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("6x6 determinant equals the product of known LU pivots") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd lower = Eigen::MatrixXd::Identity(6, 6);
  Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(6, 6);
  double product = 1.0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < i; ++j) lower(i, j) = u(rng);
    for (int j = i; j < 6; ++j) upper(i, j) = u(rng);
    upper(i, i) = 0.5 + std::abs(upper(i, i));
    product *= upper(i, i);
  }
  const core::RealMatrix m = lower * upper;
  CHECK(std::abs(core::determinant(m) - product) <= 1e-10 * std::abs(product));
}

TEST_CASE("complex determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  core::ComplexMatrix m(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = {u(rng), u(rng)};
  }
  CHECK(std::abs(core::determinant(m) - oracle::cofactor_determinant(m)) < 1e-12);
}

TEST_CASE("determinant times determinant of inverse is one") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    core::RealMatrix m = random_matrix(n, rng);
    m += 2.0 * core::RealMatrix::Identity(n, n) * n;
    const core::RealMatrix inv = m.inverse();
    CHECK(std::abs(core::determinant(m) * core::determinant(inv) - 1.0) < 1e-8);
  }
}

TEST_CASE("null space of identity and zero") {
  CHECK(core::null_space(core::RealMatrix(core::RealMatrix::Identity(5, 5))).empty());
  const auto basis = core::null_space(core::RealMatrix(core::RealMatrix::Zero(4, 4)));
  REQUIRE(basis.size() == 4);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CHECK(std::abs(basis[i].norm() - 1.0) < 1e-12);
    for (std::size_t j = i + 1; j < basis.size(); ++j) CHECK(std::abs(basis[i].dot(basis[j])) < 1e-12);
  }
}

TEST_CASE("null space of rectangular matrices") {
  core::RealMatrix wide(2, 4);
  wide << 1, 0, 0, 0, 0, 1, 0, 0;
  CHECK(core::null_space(wide).size() == 2);
  core::RealMatrix tall(4, 2);
  tall << 1, 0, 0, 1, 1, 1, 2, 3;
  CHECK(core::null_space(tall).empty());
}

TEST_CASE("null space vectors satisfy the residual bound") {
  std::mt19937_64 rng(23);
  const core::Tolerances tol;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 7;
    const int rank = 1 + trial % (n - 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd a(n, rank);
    Eigen::MatrixXd b(rank, n);
    for (auto* x : {&a, &b}) {
      for (Eigen::Index i = 0; i < x->size(); ++i) x->data()[i] = u(rng);
    }
    const core::RealMatrix m = a * b;
    const auto basis = core::null_space(m, tol);
    CHECK(static_cast<int>(basis.size()) == n - rank);
    for (const auto& v : basis) {
      CHECK((m * v).norm() <= 10.0 * tol.abs_tol * m.norm() * v.norm());
    }
  }
}

TEST_CASE("grid construction validates axes") {
  const auto g = core::Grid2T::make({0.0, 1.0, 11}, {-1.0, 1.0, 5});
  CHECK(g.n1() == 11);
  CHECK(g.n2() == 5);
  CHECK(g.point(10, 4).t1 == Approx(1.0));
  CHECK(g.point(0, 4).t2 == Approx(1.0));
  CHECK_FALSE(g.has_space());
  CHECK_THROWS_AS(g.space(), ContractViolation);
  CHECK_THROWS_AS(core::Grid2T::make({1.0, 0.0, 5}, {0.0, 1.0, 5}), ContractViolation);
  CHECK_THROWS_AS(core::Grid2T::make({0.0, 1.0, 2}, {0.0, 1.0, 5}), ContractViolation);
  CHECK_THROWS_AS(core::Grid2T::make({0.0, 1.0, 5}, {0.0, 1.0, 5}, core::Axis{0.0, 0.0, 5}),
                  ContractViolation);
}

TEST_CASE("tolerances must be positive") {
  CHECK_NOTHROW(core::Tolerances{}.validate());
  CHECK_THROWS_AS((core::Tolerances{0.0, 1e-10, 1e-8}.validate()), ContractViolation);
  CHECK_THROWS_AS((core::Tolerances{1e-5, -1.0, 1e-8}.validate()), ContractViolation);
}
