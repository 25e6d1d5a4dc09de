#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "momentbc/pencil.hpp"

using namespace momentbc;

namespace {
Matrix<double> random_symmetric(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

Matrix<double> random_spd(std::mt19937_64& rng, std::size_t n) {
  const Matrix<double> g = random_symmetric(rng, n);
  Matrix<double> m = g * g.transpose();
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 0.5;  // keep it comfortably definite
  return m;
}
}  // namespace

TEST_CASE("diagonal problems are read off directly") {
  Matrix<double> b(2, 2), c = Matrix<double>::identity(2);
  b(0, 0) = 2.0;
  b(1, 1) = 1.0;
  const auto sol = solve_pencil({b, c});
  CHECK(sol.eigenvalues == std::vector<double>{1.0, 2.0});
  CHECK(sol.eigenvectors(0, 1) == 1.0);
  CHECK(sol.eigenvectors(1, 0) == 1.0);

  // Scaling the metric rescales the vectors but not the spectrum.
  Matrix<double> c2 = Matrix<double>::identity(2);
  c2(0, 0) = 4.0;
  Matrix<double> b2(2, 2);
  b2(0, 0) = 8.0;
  b2(1, 1) = 1.0;
  const auto sol2 = solve_pencil({b2, c2});
  CHECK(sol2.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sol2.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(sol2.eigenvectors(0, 1) == doctest::Approx(0.5));  // unit C-norm
}

TEST_CASE("random problems satisfy residual and C-orthonormality") {
  std::mt19937_64 rng(7401);
  for (int pass = 0; pass < 10; ++pass) {
    const std::size_t n = 2 + rng() % 7;
    const Matrix<double> b = random_symmetric(rng, n);
    const Matrix<double> c = random_spd(rng, n);
    const auto sol = solve_pencil({b, c});
    REQUIRE(sol.eigenvalues.size() == n);
    for (std::size_t k = 0; k + 1 < n; ++k) CHECK(sol.eigenvalues[k] <= sol.eigenvalues[k + 1]);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = sol.eigenvectors(i, k);
      const std::vector<double> bf = b * f;
      const std::vector<double> cf = c * f;
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(bf[i] - sol.eigenvalues[k] * cf[i]) < 1e-9 * (1 + frobenius_norm(b)));
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = sol.eigenvectors(i, l);
        CHECK(std::abs(dot(cf, g) - (k == l ? 1.0 : 0.0)) < 1e-9);
      }
    }
  }
}

TEST_CASE("solver output is deterministic") {
  std::mt19937_64 rng(7402);
  const Matrix<double> b = random_symmetric(rng, 6);
  const Matrix<double> c = random_spd(rng, 6);
  const auto s1 = solve_pencil({b, c});
  const auto s2 = solve_pencil({b, c});
  CHECK(s1.eigenvalues == s2.eigenvalues);
  CHECK(s1.eigenvectors == s2.eigenvectors);
  // Sign convention: first nonzero component of each vector is positive.
  for (std::size_t k = 0; k < 6; ++k) {
    double colmax = 0;
    for (std::size_t i = 0; i < 6; ++i)
      colmax = std::max(colmax, std::abs(s1.eigenvectors(i, k)));
    for (std::size_t i = 0; i < 6; ++i) {
      const double v = s1.eigenvectors(i, k);
      if (std::abs(v) > 1e-12 * colmax) {
        CHECK(v > 0);
        break;
      }
    }
  }
}

TEST_CASE("indefinite metric is rejected") {
  Matrix<double> b = Matrix<double>::identity(2);
  Matrix<double> c(2, 2);
  c(0, 0) = 1.0;
  c(1, 1) = -1.0;
  CHECK_THROWS_AS(solve_pencil({b, c}), Error);
  try {
    solve_pencil({b, c});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_positive_definite);
  }
}

TEST_CASE("asymmetric input is rejected") {
  Matrix<double> b(2, 2);
  b(0, 1) = 1.0;  // b(1,0) stays 0
  CHECK_THROWS_AS(solve_pencil({b, Matrix<double>::identity(2)}), Error);
}

TEST_CASE("ill-conditioned metric triggers warning and wide retry") {
  Matrix<double> c(2, 2);
  c(0, 0) = 1.0;
  c(0, 1) = c(1, 0) = 1.0;
  c(1, 1) = 1.0 + 1e-14;
  const Matrix<double> b = Matrix<double>::identity(2);
  PencilDiagnostics diag;
  const auto sol = solve_pencil({b, c}, {}, &diag);
  CHECK(diag.condition_estimate > 1e12);
  CHECK(diag.extended_precision_used);
  REQUIRE(diag.warnings.size() == 1);
  CHECK(sol.eigenvalues.size() == 2);

  PencilOptions no_retry;
  no_retry.extended_precision_retry = false;
  PencilDiagnostics diag2;
  solve_pencil({b, c}, no_retry, &diag2);
  CHECK_FALSE(diag2.extended_precision_used);
  CHECK(diag2.warnings.size() == 1);
}

TEST_CASE("well-conditioned problems carry no warnings") {
  std::mt19937_64 rng(7403);
  const Matrix<double> b = random_symmetric(rng, 4);
  PencilDiagnostics diag;
  solve_pencil({b, Matrix<double>::identity(4)}, {}, &diag);
  CHECK(diag.warnings.empty());
  CHECK_FALSE(diag.extended_precision_used);
  CHECK(diag.condition_estimate == doctest::Approx(4.0));  // ||I||_F^2
}
