#include "dimlab/radical.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace dimlab;

TEST(Rationals, Parse) {
  EXPECT_EQ(parse_rational("3/10"), Rational(3, 10));
  EXPECT_EQ(parse_rational("0.3"), Rational(3, 10));
  EXPECT_EQ(parse_rational("0.08"), Rational(2, 25));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_fraction_string(Rational(4)), "4/1");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Radical, PowersOfTwoRoundTrip) {
  const RadicalNumber a = RadicalNumber::pow2(Rational(10, 3));
  const RadicalNumber b = RadicalNumber::pow2(Rational(-10, 3));
  EXPECT_EQ(a * b, RadicalNumber(1));
  EXPECT_EQ(RadicalNumber::pow2(Rational(1, 2)) * RadicalNumber::pow2(Rational(1, 2)), RadicalNumber::pow2(1));
  EXPECT_EQ(RadicalNumber::pow2(Rational(1, 3)) * RadicalNumber::pow2(Rational(1, 6)),
            RadicalNumber::pow2(Rational(1, 2)));
  EXPECT_NEAR(a.approx(), std::pow(2.0, -10.0 / 3.0), 1e-15);
}

TEST(Radical, ExactTiesAndSigns) {
  // span of two level-1 siblings of C(1/3-field) equals the full length
  const RadicalNumber c = RadicalNumber::pow2(Rational(10, 3));
  const RadicalNumber one(1);
  EXPECT_EQ((one - c) + c, one);
  EXPECT_EQ((one - c - c).sign(), 1);
  EXPECT_EQ((c - c).sign(), 0);
  // 2^{1/2} - 1.41421356 > 0 while 2^{1/2} - 1.41421357 < 0
  const RadicalNumber root2 = RadicalNumber::pow2(Rational(-1, 2));
  EXPECT_EQ((root2 - RadicalNumber(141421356).scaled(Rational(0)) * RadicalNumber(1).scaled(0)).sign(), -1);
  EXPECT_GT(root2, RadicalNumber(1));
  EXPECT_LT(root2, RadicalNumber(2));
}

TEST(Radical, NearCancellationResolves) {
  // (2^{1/3})^{300} = 2^{100}; a perturbation of 1 at that magnitude is still seen.
  const RadicalNumber big = RadicalNumber::pow2(Rational(-300, 3));
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, 100);
  EXPECT_EQ(big, RadicalNumber(p));
  EXPECT_EQ((big - RadicalNumber(Integer(p - 1))).sign(), 1);
  const RadicalNumber tiny = RadicalNumber::pow2(Rational(3000, 7));
  EXPECT_EQ(tiny.sign(), 1);
  EXPECT_EQ((RadicalNumber(1) + tiny - RadicalNumber(1)).sign(), 1);
}

TEST(Radical, CeilAndFloor) {
  const RadicalNumber x = RadicalNumber::pow2(Rational(-5, 2));  // 2^{2.5} = 5.65...
  EXPECT_EQ(x.ceil(), 6);
  EXPECT_EQ(x.floor(), 5);
  EXPECT_EQ(RadicalNumber(7).ceil(), 7);
  EXPECT_EQ(RadicalNumber(7).floor(), 7);
  EXPECT_EQ((-x).ceil(), -5);
}

TEST(Radical, CanonicalKeysDecideEquality) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational e1(pick(rng), 3), e2(pick(rng), 7);
    const RadicalNumber a = RadicalNumber::pow2(e1) + RadicalNumber::pow2(e2);
    const RadicalNumber b = RadicalNumber::pow2(e2) + RadicalNumber::pow2(e1);
    EXPECT_EQ(a.canonical_key(21), b.canonical_key(21));
    const RadicalNumber c = a + RadicalNumber::pow2(Rational(40));
    EXPECT_NE(a.canonical_key(21), c.canonical_key(21));
  }
}

TEST(Log2, FoldsPowersOfTwo) {
  const Log2Value v(1, 12);  // 1 + log2 12 = 3 + log2 3
  EXPECT_EQ(v.offset(), 3);
  EXPECT_EQ(v.argument(), 3);
  EXPECT_TRUE(Log2Value::of_integer(Integer(64)).is_rational());
  EXPECT_EQ(Log2Value::of_integer(Integer(64)).offset(), 6);
}

TEST(Log2, CertifiedComparison) {
  EXPECT_EQ(Log2Value(0, 3).compare(Log2Value(Rational(158, 100))), std::partial_ordering::greater);
  EXPECT_EQ(Log2Value(0, 3).compare(Log2Value(Rational(159, 100))), std::partial_ordering::less);
  EXPECT_EQ(Log2Value(2, 3).compare(Log2Value(0, 12)), std::partial_ordering::equivalent);
  const auto [lo, hi] = Log2Value(0, 6).bounds();
  EXPECT_LE(lo, std::log2(6.0));
  EXPECT_GE(hi, std::log2(6.0));
}

TEST(Quotient, Bounds) {
  const Quotient q{Log2Value(10, Rational(1, 3)), Rational(20)};
  const auto [lo, hi] = q.bounds();
  const double expected = (10 - std::log2(3.0)) / 20;
  EXPECT_LE(lo, expected);
  EXPECT_GE(hi, expected);
  EXPECT_LT(hi - lo, 1e-12);
  EXPECT_EQ((Quotient{Log2Value(7), Rational(14)}).exact(), Rational(1, 2));
}
