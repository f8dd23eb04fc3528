#include <gtest/gtest.h>

#include "racah/error.hpp"
#include "racah/exactnum.hpp"
#include "racah/halfint.hpp"

using namespace racah;

TEST(Canonicalize, ExtractsSquares) {
  auto a = canonicalize(Integer(8), Integer(1));
  EXPECT_EQ(a.radicand, Rational(2));
  EXPECT_EQ(a.factor, Rational(2));
  auto b = canonicalize(Integer(1), Integer(2));
  EXPECT_EQ(b.radicand, Rational(1, 2));
  EXPECT_EQ(b.factor, Rational(1));
  auto c = canonicalize(Integer(45), Integer(4));
  EXPECT_EQ(c.radicand, Rational(5));
  EXPECT_EQ(c.factor, Rational(3, 2));
  auto d = canonicalize(Integer(-12), Integer(1));
  EXPECT_EQ(d.radicand, Rational(3));
  EXPECT_EQ(d.factor, Rational(-2));
}

TEST(Canonicalize, ZeroDenominator) {
  EXPECT_THROW(canonicalize(Integer(1), Integer(0)), InvalidInput);
}

TEST(SqrtRationalSum, ToFloat) {
  EXPECT_EQ(to_float(SqrtRationalSum()), 0.0);
  EXPECT_NEAR(to_float(SqrtRationalSum::sqrt(Rational(1, 2))), 0.7071067811865476, 1e-15);
  EXPECT_DOUBLE_EQ(to_float(SqrtRationalSum(Rational(1, 6))), 0.16666666666666666);
}

TEST(SqrtRationalSum, EqualityIsStructural) {
  EXPECT_EQ(SqrtRationalSum::sqrt(8), SqrtRationalSum::sqrt(2) * Rational(2));
  EXPECT_EQ(SqrtRationalSum::sqrt(Rational(1, 2)), SqrtRationalSum::sqrt(2) * Rational(1, 2));
  SqrtRationalSum s = SqrtRationalSum::sqrt(2) + SqrtRationalSum::sqrt(3);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_FALSE(s == SqrtRationalSum::sqrt(5));
  EXPECT_TRUE((s - s).is_zero());
}

TEST(SqrtRationalSum, SquaringSingleTermIsRational) {
  for (int n = 1; n < 40; ++n) {
    Rational r(n, 7);
    r.canonicalize();
    SqrtRationalSum x = SqrtRationalSum::signed_sqrt(-r);
    SqrtRationalSum sq = x * x;
    ASSERT_TRUE(sq.is_rational());
    EXPECT_EQ(sq.rational_value(), r);
    EXPECT_EQ(x.sign(), -1);
  }
}

TEST(SqrtRationalSum, ProductsAndInverse) {
  SqrtRationalSum a = SqrtRationalSum::sqrt(6), b = SqrtRationalSum::sqrt(Rational(2, 3));
  EXPECT_EQ(a * b, SqrtRationalSum(Rational(2)));
  EXPECT_EQ(a / b, SqrtRationalSum(Rational(3)));
  SqrtRationalSum c = (SqrtRationalSum(1) + SqrtRationalSum::sqrt(2)) * (SqrtRationalSum(1) - SqrtRationalSum::sqrt(2));
  EXPECT_EQ(c, SqrtRationalSum(-1));
}

TEST(SqrtRationalSum, ExactSignOfMixedSum) {
  // sqrt(2) + sqrt(3) - sqrt(10) is about -0.016
  SqrtRationalSum x = SqrtRationalSum::sqrt(2) + SqrtRationalSum::sqrt(3) - SqrtRationalSum::sqrt(10);
  EXPECT_EQ(x.sign(), -1);
  EXPECT_EQ((-x).sign(), 1);
}

TEST(SqrtRationalSum, JsonRoundTrip) {
  SqrtRationalSum x = SqrtRationalSum::sqrt(Rational(3, 5)) * Rational(-7, 2) + SqrtRationalSum(Rational(1, 9));
  EXPECT_EQ(sqrt_sum_from_json(to_json(x)), x);
  ExactComplex z{x, SqrtRationalSum::sqrt(2)};
  EXPECT_EQ(exact_complex_from_json(to_json(z)), z);
}

TEST(ExactComplex, Arithmetic) {
  ExactComplex i = ExactComplex::i_unit();
  EXPECT_EQ(i * i, ExactComplex(SqrtRationalSum(-1)));
  ExactComplex z{SqrtRationalSum::sqrt(Rational(1, 2)), SqrtRationalSum::sqrt(Rational(1, 2))};
  EXPECT_EQ(z.norm(), SqrtRationalSum(1));
  EXPECT_EQ(z.conj().im, -z.im);
}

TEST(HalfInt, Parse) {
  EXPECT_EQ(HalfInt::parse("3/2").twice(), 3);
  EXPECT_EQ(HalfInt::parse("1.5").twice(), 3);
  EXPECT_EQ(HalfInt::parse("-2").twice(), -4);
  EXPECT_THROW(HalfInt::parse("1/3"), InvalidInput);
  EXPECT_THROW(HalfInt::parse("x"), InvalidInput);
  EXPECT_EQ(phase(HalfInt(3)), -1);
  EXPECT_THROW(phase(HalfInt::from_twice(1)), InvalidInput);
}

TEST(SnapSignedSqrt, RecognizesSmallRadicals) {
  SqrtRationalSum out;
  ASSERT_TRUE(snap_signed_sqrt(-std::sqrt(3.0 / 7.0), out));
  EXPECT_EQ(out, -SqrtRationalSum::sqrt(Rational(3, 7)));
}
