#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wmd/scalars.hpp"

using namespace wmd;

TEST_CASE("gamma(0) = -1 regardless of n") {
  for (int n : {1, 2, 3, 4, 6}) {
    CHECK(GammaScalar::gamma(0, n) == GammaScalar::integer(-1));
    CHECK(GammaScalar::gamma(n, n) == GammaScalar::integer(-1));
    CHECK(GammaScalar::gamma(-n, n) == GammaScalar::integer(-1));
  }
}

TEST_CASE("gamma(i)gamma(-i) = 1/q") {
  for (int n : {2, 3, 4, 6}) {
    for (int i = 1; i < n; ++i) {
      GammaScalar prod = GammaScalar::gamma(i, n) * GammaScalar::gamma(-i, n);
      CHECK(prod == GammaScalar::q_power(-1));
    }
  }
}

TEST_CASE("even n: middle generator squares to 1/q") {
  GammaScalar g = GammaScalar::gamma(1, 2);
  CHECK(g * g == GammaScalar::q_power(-1));
  GammaScalar g2 = GammaScalar::gamma(2, 4);
  CHECK(g2 * g2 == GammaScalar::q_power(-1));
}

TEST_CASE("ring arithmetic") {
  GammaScalar g = GammaScalar::gamma(1, 2);
  GammaScalar one = GammaScalar::one();
  // (1+g)(1-g) = 1 - g^2 = 1 - 1/q
  CHECK((one + g) * (one - g) == one - GammaScalar::q_power(-1));
  CHECK((g - g).is_zero());
  CHECK(g.mul_q(3) * GammaScalar::q_power(-3) == g);
  CHECK(g.inverse() * g == one);
  CHECK(GammaScalar::rational(Rational(2, 3)) +
            GammaScalar::rational(Rational(1, 3)) ==
        one);
}

TEST_CASE("mixing different degrees n is rejected") {
  GammaScalar a = GammaScalar::gamma(1, 2);
  GammaScalar b = GammaScalar::gamma(1, 3);
  CHECK_THROWS_AS(a * b, Error);
  // n=0 constants are compatible with everything
  CHECK((a * GammaScalar::q_power(2)).degree_n() == 2);
}

TEST_CASE("numeric context gives the classical quadratic Gauss sum") {
  auto ctx = NumericGammaContext::build(5, 2);
  // g(1,t;eps) = sqrt(5), so gamma(1) = sqrt(5)/5
  std::complex<double> g1 = ctx.gamma_value(1);
  CHECK(std::abs(g1 - std::complex<double>(1.0 / std::sqrt(5.0), 0.0)) <
        1e-9);
  CHECK(std::abs(ctx.gamma_value(0) - std::complex<double>(-1.0)) < 1e-12);
}

TEST_CASE("numeric context satisfies the defining relations") {
  for (auto [q, n] : {std::pair<long long, int>{5, 2}, {13, 2}, {13, 3}, {13, 6}, {7, 3}}) {
    auto ctx = NumericGammaContext::build(q, n);
    for (int i = 1; i < n; ++i) {
      std::complex<double> prod = ctx.gamma_value(i) * ctx.gamma_value(n - i);
      CHECK(std::abs(prod - std::complex<double>(1.0 / static_cast<double>(q))) <
            1e-9);
      // |gamma(i)| = q^{-1/2}
      CHECK(std::abs(std::abs(ctx.gamma_value(i)) -
                     1.0 / std::sqrt(static_cast<double>(q))) < 1e-9);
    }
  }
}

TEST_CASE("symbolic eval matches numeric relations") {
  auto ctx = NumericGammaContext::build(13, 3);
  GammaScalar expr = GammaScalar::gamma(1, 3) * GammaScalar::gamma(2, 3) -
                     GammaScalar::q_power(-1);
  CHECK(std::abs(expr.eval(ctx)) < 1e-9);
  GammaScalar g4 = GammaScalar::gamma(4, 3);  // = gamma(1)
  CHECK(std::abs(g4.eval(ctx) - ctx.gamma_value(1)) < 1e-12);
}

TEST_CASE("context construction guards") {
  CHECK_THROWS_AS(NumericGammaContext::build(6, 2), Error);   // composite
  CHECK_THROWS_AS(NumericGammaContext::build(7, 2), Error);   // 7 != 1 mod 4
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(smallest_generator(5) == 2);
  CHECK(smallest_generator(13) == 2);
}
