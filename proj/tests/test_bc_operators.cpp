#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "momentbc/bc_operators.hpp"
#include "momentbc/chebyshev.hpp"
#include "momentbc/moments.hpp"

using namespace momentbc;

namespace {
std::vector<Rational> response_of(const DiscreteMeasure<Rational>& mu, int count) {
  return moments_to_response(moments_of_measure(mu, count));
}
}  // namespace

TEST_CASE("worked 2x2 examples") {
  // Symmetric two-atom data: the connecting operator is the identity and the
  // weighted operator swaps the basis vectors.
  const std::vector<Rational> r{Rational(1), Rational(0), Rational(0), Rational(0)};
  const Matrix<Rational> c = connecting_operator(r, 2);
  CHECK(c == Matrix<Rational>::identity(2));
  const Matrix<Rational> b = weighted_connecting_operator(r, 2);
  CHECK(b(0, 0) == 0);
  CHECK(b(0, 1) == 1);
  CHECK(b(1, 0) == 1);
  CHECK(b(1, 1) == 0);

  // Single atom at 2: the 1x1 weighted operator reads off the first moment.
  const std::vector<Rational> r2 = moments_to_response(std::vector<Rational>{Rational(1), Rational(2)});
  CHECK(weighted_connecting_operator(r2, 1)(0, 0) == 2);
  CHECK(connecting_operator(r2, 1)(0, 0) == 1);
}

TEST_CASE("connecting operator is the flipped Hankel block in disguise") {
  std::mt19937_64 rng(7201);
  for (int pass = 0; pass < 8; ++pass) {
    const auto mu = fixtures::random_rational_measure(rng, 5);
    const int order = 4;
    const auto s = moments_of_measure(mu, 2 * order);
    const auto r = moments_to_response(s);
    const Matrix<Rational> lam = cheb_coefficient_matrix_flipped<Rational>(order);
    const Matrix<Rational> lam_t = lam.transpose();
    CHECK(connecting_operator(r, order) ==
          lam * hankel_block(s, 0, order, Orientation::flipped) * lam_t);
    CHECK(weighted_connecting_operator(r, order) ==
          lam * hankel_block(s, 1, order, Orientation::flipped) * lam_t);
  }
}

TEST_CASE("operators match direct integration against the measure") {
  std::mt19937_64 rng(7202);
  const auto mu = fixtures::random_rational_measure(rng, 4);
  const int order = 4;
  const auto r = response_of(mu, 2 * order);
  CHECK(connecting_operator(r, order) == connecting_from_measure(mu, order, 0));
  CHECK(weighted_connecting_operator(r, order) == connecting_from_measure(mu, order, 1));
}

TEST_CASE("both operators are symmetric by construction") {
  std::mt19937_64 rng(7203);
  const auto mu = fixtures::random_rational_measure(rng, 6);
  const auto r = response_of(mu, 12);
  const Matrix<Rational> b = weighted_connecting_operator(r, 6);
  CHECK(b == b.transpose());
}

TEST_CASE("connecting operator definiteness follows the shift-0 block") {
  std::mt19937_64 rng(7204);
  for (int pass = 0; pass < 6; ++pass) {
    const auto mu = fixtures::random_rational_measure(rng, 3);
    for (int order = 1; order <= 5; ++order) {
      const auto s = moments_of_measure(mu, 2 * order - 1);
      const auto r = moments_to_response(s);
      const PdVerdict hankel = check_positive_definite(hankel_block(s, 0, order));
      const PdVerdict gram = check_positive_definite(connecting_operator(r, order));
      CHECK(hankel == gram);
    }
  }
}

TEST_CASE("response matrix and convolution agree") {
  const std::vector<Rational> r{Rational(1), Rational(2), Rational(3)};
  const Matrix<Rational> m = response_matrix(r, 3);
  CHECK(m(0, 0) == 0);
  CHECK(m(1, 0) == 1);
  CHECK(m(2, 0) == 2);
  CHECK(m(2, 1) == 1);
  CHECK(m(0, 1) == 0);

  const std::vector<Rational> f{Rational(5), Rational(-1), Rational(7)};
  const std::vector<Rational> by_matrix = m * f;
  for (int t = 0; t < 3; ++t)
    CHECK(response_value(r, f, t) == by_matrix[static_cast<std::size_t>(t)]);
}

TEST_CASE("precondition failures carry the right code") {
  const std::vector<Rational> r{Rational(1), Rational(0), Rational(0)};
  CHECK_THROWS_AS(weighted_connecting_operator(r, 2), Error);  // needs 4 entries
  CHECK_NOTHROW(connecting_operator(r, 2));
  try {
    weighted_connecting_operator(r, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_response_entries);
  }
}
