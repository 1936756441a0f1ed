#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wmd/laurent.hpp"

using namespace wmd;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, int rank, int nterms) {
  std::uniform_int_distribution<int> exp(-3, 3), coef(-4, 4), qe(-2, 2);
  LaurentPoly f(rank);
  for (int t = 0; t < nterms; ++t) {
    Weight b(rank);
    for (int i = 0; i < rank; ++i) b[i] = exp(rng);
    f.add_term(b, GammaScalar::integer(coef(rng)).mul_q(qe(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("basic arithmetic") {
  LaurentPoly x = LaurentPoly::monomial(Weight{1, 0}, GammaScalar::one());
  LaurentPoly y = LaurentPoly::monomial(Weight{0, 1}, GammaScalar::one());
  LaurentPoly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK((p - p).is_zero());
  CHECK(p.coeff(Weight{2, 0}) == GammaScalar::one());
  CHECK(p.coeff(Weight{1, 1}).is_zero());
}

TEST_CASE("binomial expand") {
  BinomialFactor b{2, Weight{1, 1}};
  LaurentPoly f = b.expand(2);
  CHECK(f.coeff(Weight{0, 0}) == GammaScalar::one());
  CHECK(f.coeff(Weight{1, 1}) == GammaScalar::integer(-1).mul_q(2));
}

TEST_CASE("exact division round trip") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    LaurentPoly g = random_poly(rng, 2, 5);
    if (g.is_zero()) continue;
    std::uniform_int_distribution<int> vd(-2, 2), qd(-2, 2);
    Weight v{vd(rng), vd(rng)};
    if (v == Weight{0, 0}) v = Weight{1, 0};
    BinomialFactor b{qd(rng), v};
    LaurentPoly f = g * b.expand(2);
    auto quo = try_exact_divide(f, b);
    REQUIRE(quo.has_value());
    CHECK(*quo == g);
  }
}

TEST_CASE("division failure is detected") {
  LaurentPoly f = LaurentPoly::one(1);
  f.add_term(Weight{1}, GammaScalar::integer(2));
  BinomialFactor b{0, Weight{1}};  // 1 - x does not divide 1 + 2x
  CHECK_FALSE(try_exact_divide(f, b).has_value());
  CHECK_THROWS_AS(exact_divide(f, b), DivisibilityError);
}

TEST_CASE("division handles negatively oriented factors") {
  // (1 - q x^{-1}) divides its own multiples
  LaurentPoly g = LaurentPoly::one(1);
  g.add_term(Weight{-2}, GammaScalar::integer(3).mul_q(1));
  BinomialFactor b{1, Weight{-1}};
  LaurentPoly f = g * b.expand(1);
  auto quo = try_exact_divide(f, b);
  REQUIRE(quo.has_value());
  CHECK(*quo == g);
}

TEST_CASE("substitute_weyl is multiplicative and respects q-shift") {
  RootSystem rs = RootSystem::build("A2", 2);
  auto W = weyl_enumerate(rs);
  std::mt19937_64 rng(7);
  LaurentPoly f = random_poly(rng, 2, 4);
  LaurentPoly g = random_poly(rng, 2, 4);
  for (const auto& w : W) {
    CHECK((f * g).substitute_weyl(w, rs) ==
          f.substitute_weyl(w, rs) * g.substitute_weyl(w, rs));
    // round trip through the inverse
    CHECK(f.substitute_weyl(w, rs).substitute_weyl(w.inverse(rs), rs) == f);
  }
  // simple reflection on a monomial: x^{alpha_1} -> q^{-2} x^{-alpha_1}
  LaurentPoly m = LaurentPoly::monomial(Weight{1, 0}, GammaScalar::one());
  LaurentPoly im = m.substitute_weyl(WeylElement::simple(0, rs), rs);
  CHECK(im.coeff(Weight{-1, 1}) == GammaScalar::zero());
  CHECK(im.coeff(Weight{-1, 0}) == GammaScalar::q_power(-2));
}

TEST_CASE("grading decomposition") {
  RootSystem a1 = RootSystem::build("A1", 2);
  LaurentPoly f(1);
  f.add_term(Weight{0}, GammaScalar::one());
  f.add_term(Weight{1}, GammaScalar::integer(2));
  f.add_term(Weight{2}, GammaScalar::integer(3));
  f.add_term(Weight{-1}, GammaScalar::integer(4));
  auto parts = grade_decompose(f, a1);
  CHECK(parts.size() == 2);
  LaurentPoly sum(1);
  for (const auto& [cls, p] : parts) {
    sum = sum + p;
    for (const auto& [b, c] : p.terms())
      CHECK(a1.reduce_mod_sublattice(b) == cls);
  }
  CHECK(sum == f);
}

TEST_CASE("graded rational arithmetic and equality") {
  LaurentPoly one = LaurentPoly::one(1);
  GradedRational a(one);
  a.push_denominator(BinomialFactor{0, Weight{1}});  // 1/(1-x)
  GradedRational b(one);
  b.push_denominator(BinomialFactor{0, Weight{1}});
  b.push_denominator(BinomialFactor{1, Weight{1}});  // 1/((1-x)(1-qx))
  GradedRational sum = a + b;
  // sum = ((1-qx) + 1)/((1-x)(1-qx))
  LaurentPoly expected(1);
  expected.add_term(Weight{0}, GammaScalar::integer(2));
  expected.add_term(Weight{1}, GammaScalar::integer(-1).mul_q(1));
  CHECK(sum.numer() == expected);
  CHECK(sum.denom().size() == 2);

  // (1-x)/(1-x) equals 1
  GradedRational c(BinomialFactor{0, Weight{1}}.expand(1));
  c.push_denominator(BinomialFactor{0, Weight{1}});
  CHECK(c.equals(GradedRational(one)));
  c.normalize();
  CHECK(c.denom().empty());
  CHECK(c.numer() == one);
}

TEST_CASE("push_denominator reorients") {
  GradedRational a(LaurentPoly::one(1));
  a.push_denominator(BinomialFactor{2, Weight{-1}});  // 1/(1 - q^2 x^{-1})
  CHECK(a.denom().size() == 1);
  CHECK(a.denom()[0].vec == Weight{1});
  CHECK(a.denom()[0].qexp == -2);
  // 1/(1-q^2/x) = (-q^{-2} x)/(1 - q^{-2} x)
  CHECK(a.numer().coeff(Weight{1}) == GammaScalar::integer(-1).mul_q(-2));
}

TEST_CASE("rational substitution round trip") {
  RootSystem rs = RootSystem::build("B2", 2);
  std::mt19937_64 rng(11);
  GradedRational f(random_poly(rng, 2, 4));
  f.push_denominator(BinomialFactor{1, Weight{0, 2}});
  f.push_denominator(BinomialFactor{1, Weight{2, 2}});
  for (const auto& w : weyl_enumerate(rs)) {
    GradedRational g =
        f.substitute_weyl(w, rs).substitute_weyl(w.inverse(rs), rs);
    CHECK(g.equals(f));
  }
}
