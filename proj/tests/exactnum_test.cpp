#include "hgd/bigrational.hpp"
#include "hgd/constant_expr.hpp"
#include "hgd/errors.hpp"
#include "hgd/numeric.hpp"
#include "hgd/quadelem.hpp"

#include <gtest/gtest.h>
#include <mpfr.h>

#include <random>

using namespace hgd;

TEST(BigRational, ParsesAndNormalizes) {
  EXPECT_EQ(BigRational::parse("-6/4"), BigRational(-3) / BigRational(2));
  EXPECT_EQ(BigRational::parse("  -12 "), BigRational(-12));
  EXPECT_EQ(BigRational::parse("0/7").str(), "0");
  EXPECT_EQ(BigRational::parse("123456789012345678901234567890/10").num(),
            parse_bigint("12345678901234567890123456789"));
  EXPECT_THROW(BigRational::parse("1/0"), ParseError);
  EXPECT_THROW(BigRational::parse("1/-2"), ParseError);
  EXPECT_THROW(BigRational::parse("1.5"), ParseError);
  EXPECT_THROW(BigRational::parse(""), ParseError);
}

TEST(BigRational, FieldAxiomsOnRandomValues) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(-1000, 1000);
  auto pick = [&] {
    long den = 0;
    while (den == 0) den = d(rng);
    return BigRational(BigInt(d(rng)), BigInt(den));
  };
  for (int i = 0; i < 200; ++i) {
    BigRational a = pick(), b = pick(), c = pick();
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a - a, BigRational(0));
    if (!b.is_zero()) {
      EXPECT_EQ(a / b * b, a);
    }
    if (a < b) EXPECT_LE(a.to_double(), b.to_double());
  }
}

TEST(BigRational, FloorCeilAndPowers) {
  BigRational x = BigRational::parse("-7/2");
  EXPECT_EQ(x.floor(), BigInt(-4));
  EXPECT_EQ(x.ceil(), BigInt(-3));
  EXPECT_EQ(x.pow(-2), BigRational::parse("4/49"));
  EXPECT_TRUE(x.is_half_integer_multiple());
  EXPECT_FALSE(BigRational::parse("1/3").is_half_integer_multiple());
  EXPECT_EQ(lcm(BigInt(4), BigInt(6)), BigInt(12));
  EXPECT_EQ(ipow(BigInt(3), 40), parse_bigint("12157665459056928801"));
}

TEST(QuadElem, ArithmeticInQi) {
  QuadElem a(2, 3, -1), b(-1, 1, -1);  // 2 + 3i, -1 + i
  QuadElem p = a * b;                   // -2 + 2i - 3i - 3 = -5 - i
  EXPECT_EQ(p, QuadElem(-5, -1, -1));
  EXPECT_EQ(p / b, a);
  EXPECT_EQ(a.norm(), BigRational(13));
  EXPECT_EQ(a * a.inverse(), QuadElem(1, 0, -1));
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_EQ(a.pow(-1), a.inverse());
}

TEST(QuadElem, AlgebraicIntegerShapes) {
  EXPECT_TRUE(QuadElem(1, 1, -1).is_algebraic_integer());
  EXPECT_FALSE(QuadElem(BigRational::parse("1/2"), BigRational::parse("1/2"), -1).is_algebraic_integer());
  // d = -3 = 1 mod 4 admits half-integers
  EXPECT_TRUE(QuadElem(BigRational::parse("1/2"), BigRational::parse("1/2"), -3).is_algebraic_integer());
  EXPECT_FALSE(QuadElem(BigRational::parse("1/2"), 1, -3).is_algebraic_integer());
}

TEST(QuadElem, SquarefreeParts) {
  BigInt s;
  EXPECT_EQ(squarefree_part(BigInt(-72), &s), BigInt(-2));
  EXPECT_EQ(s, BigInt(6));
  EXPECT_TRUE(is_squarefree(BigInt(30)));
  EXPECT_FALSE(is_squarefree(BigInt(12)));
}

TEST(Interval, PiEnclosureMatchesMpfr) {
  for (mpfr_prec_t prec : {64, 200, 1000}) {
    Interval p = Interval::pi(prec);
    mpfr_t ref;
    mpfr_init2(ref, prec + 40);
    mpfr_const_pi(ref, MPFR_RNDN);
    EXPECT_LE(mpfr_cmp(p.lo().get(), ref), 0);
    EXPECT_GE(mpfr_cmp(p.hi().get(), ref), 0);
    EXPECT_LT(p.log2_width(), -static_cast<double>(prec) + 4);
    mpfr_clear(ref);
  }
}

TEST(Interval, ContainsExactRationals) {
  BigRational third = BigRational::parse("1/3");
  Interval x(third, 64);
  EXPECT_TRUE(x.contains(third));
  EXPECT_FALSE(x.contains(BigRational::parse("333333333/1000000000")));
  Interval y = x * Interval(BigRational(3), 64);
  EXPECT_TRUE(y.contains(BigRational(1)));
  EXPECT_TRUE((x - x).contains_zero());
  EXPECT_EQ(Interval(BigRational(-2), 64).sign(), -1);
}

TEST(Interval, ExpAndLogAreInverse) {
  Interval x(BigRational::parse("7/5"), 128);
  EXPECT_TRUE(x.exp().log().overlaps(x));
}

TEST(ConstExpr, SinhIdentityEnclosure) {
  // sinh(pi) = (e^pi - e^-pi) / 2
  ConstExpr pi = ConstExpr::pi();
  ConstExpr X = ConstExpr::exp_pi_sqrt(1, 1);
  ConstExpr diff = pi.sinh() - (X - ConstExpr::rational(1) / X) / ConstExpr::rational(2);
  Interval v = diff.evaluate(256);
  EXPECT_TRUE(v.contains_zero());
  EXPECT_LT(v.log2_width(), -240);
}

TEST(ConstExpr, EnclosureMeetsRequestedWidth) {
  ConstExpr e = ConstExpr::exp_pi_sqrt(2, 3) / ConstExpr::pi();
  for (long bits : {32L, 128L, 512L}) {
    Interval v = eval_enclosure(e, bits);
    EXPECT_LT(v.log2_width(), -static_cast<double>(bits) + kEnclosureSlack + 4);
  }
}

TEST(ConstExpr, CounterTracksEvaluations) {
  auto before = interval_evaluation_count();
  eval_enclosure(ConstExpr::pi(), 64);
  EXPECT_GT(interval_evaluation_count(), before);
}
