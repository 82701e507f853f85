#include "hgd/gammacanon.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>

using namespace hgd;

namespace {

HGInstance harmonious(const std::string& p, const std::string& q, const std::string& u0 = "1") {
  HGInstance I;
  I.p = parse_int_poly(p);
  I.q = parse_int_poly(q);
  I.u0 = BigRational::parse(u0);
  I.t = BigRational(0);
  return I;
}

QuadElem gi(long a, long b) { return QuadElem(a, b, -1); }

// pi / (y sinh(pi y)) at 200 bits, straight from MPFR.
double pi_over_y_sinh(double y) {
  mpfr_t a, b;
  mpfr_inits2(200, a, b, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(a, MPFR_RNDN);
  mpfr_mul_d(b, a, y, MPFR_RNDN);
  mpfr_sinh(b, b, MPFR_RNDN);
  mpfr_mul_d(b, b, y, MPFR_RNDN);
  mpfr_div(a, a, b, MPFR_RNDN);
  double r = mpfr_get_d(a, MPFR_RNDN);
  mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
  return r;
}

}  // namespace

TEST(Shift, RecurrenceFactors) {
  // Gamma(3 + 2i) = (2 + 2i)(1 + 2i)(2i) Gamma(2i)
  ShiftResult s = shift_to_base(gi(3, 2));
  EXPECT_FALSE(s.half);
  EXPECT_EQ(s.w, gi(0, 2));
  EXPECT_EQ(s.A.str(), (gi(2, 2) * gi(1, 2) * gi(0, 2)).str());
  // Gamma(-1 + i) = Gamma(i) / (-1 + i)
  ShiftResult n = shift_to_base(gi(-1, 1));
  EXPECT_EQ(n.A.str(), gi(-1, 1).inverse().str());
  EXPECT_TRUE(shift_to_base(QuadElem(BigRational(5, 2), 1, -1)).half);
  EXPECT_THROW(shift_to_base(QuadElem(BigRational(1, 3), 1, -1)), DomainError);
  EXPECT_THROW(shift_to_base(QuadElem::rational(-2, -1)), DomainError);
}

TEST(PairProduct, ReflectionClosedForms) {
  PairForm one = pair_product(BigRational(1), gi(0, 1));
  EXPECT_EQ(one.kind, PairForm::Kind::IntegerRho);
  EXPECT_EQ(one.A, BigRational(1));
  PairForm two = pair_product(BigRational(2), gi(0, 1));
  EXPECT_EQ(two.A, BigRational(2));  // (1 + i)(1 - i)
  Interval v = two.value().evaluate(128);
  double ref = 2 * pi_over_y_sinh(1.0);
  EXPECT_NEAR(v.mid_double(), ref, 1e-12);
  PairForm half = pair_product(BigRational(1, 2), gi(0, 1));
  EXPECT_EQ(half.kind, PairForm::Kind::HalfIntegerRho);
  EXPECT_EQ(half.A, BigRational(1));
  EXPECT_THROW(pair_product(BigRational(1), QuadElem(0, 1, 2)), UnsupportedError);
}

TEST(Canonical, ExampleTuple) {
  HGInstance I = harmonious("x^2 - 4x + 13", "x^2 - 4x + 5");
  CanonicalConstant C = limit_constant(I);
  EXPECT_EQ(C.theta, QuadElem(BigRational(1, 39), 0, -1));
  EXPECT_EQ(C.ell, 0);
  EXPECT_EQ(C.f, parse_int_poly("x^2"));
  EXPECT_EQ(C.g, parse_int_poly("x^4 + x^2 + 1"));
  EXPECT_FALSE(C.base_trivial);
  EXPECT_TRUE(matches_partial_product(C, I, 2000, 64));
}

TEST(Canonical, TelescopingLimitIsRational) {
  // u_n = 2(n + 1)/(n + 2) -> 2
  HGInstance I = harmonious("(x+1)*(x+3)", "(x+2)^2");
  CanonicalConstant C = limit_constant(I);
  Interval v = C.enclose(100);
  EXPECT_TRUE(v.contains(BigRational(2)));
  EXPECT_LT(v.log2_width(), -90);
}

TEST(Canonical, LimitMatchesLongPartialProducts) {
  for (const auto& [p, q] : std::vector<std::pair<std::string, std::string>>{
           {"x^2 + 1", "x^2 + 4"}, {"x^2 + 2x + 5", "x^2 + 2x + 2"}, {"(x+1)*(x^2+2x+3)", "(x+3)*(x^2+8)"}}) {
    HGInstance I = harmonious(p, q);
    CanonicalConstant C = limit_constant(I);
    EXPECT_TRUE(matches_partial_product(C, I, 4000, 64)) << p << " / " << q;
    // an independent crude check: product to 10^5 in long double
    long double prod = 1;
    for (long k = 0; k < 100000; ++k)
      prod *= static_cast<long double>(oracle::eval(I.q, k).get_d()) / oracle::eval(I.p, k).get_d();
    EXPECT_NEAR(C.enclose(64).mid_double(), static_cast<double>(prod), 1e-3 * std::fabs(static_cast<double>(prod)));
  }
}

TEST(Canonical, RejectsRealQuadraticRoots) {
  HGInstance I = harmonious("x^2 - 2x - 1", "x^2 - 2x - 4");
  EXPECT_THROW(limit_constant(I), UnsupportedError);
}

TEST(Envelope, BoundsTheLogOfTheTail) {
  IntPoly p = parse_int_poly("x^2 - 4x + 13"), q = parse_int_poly("x^2 - 4x + 5");
  TailEnvelope env = tail_envelope(p, q, 10);
  EXPECT_GE(env.K, 10);
  long double s = 0;
  for (long k = env.K; k < env.K + 2000000; ++k)
    s += std::log(static_cast<long double>(oracle::eval(q, k).get_d()) / oracle::eval(p, k).get_d());
  EXPECT_LE(std::fabs(static_cast<double>(s)), env.E.to_double());
  EXPECT_THROW(tail_envelope(parse_int_poly("x + 1"), parse_int_poly("x + 2"), 0), DomainError);
}

TEST(Envelope, DetectsWrongConstant) {
  HGInstance I = harmonious("x^2 - 4x + 13", "x^2 - 4x + 5");
  CanonicalConstant C = limit_constant(I);
  C.theta = QuadElem(BigRational(1, 40), 0, -1);
  EXPECT_FALSE(matches_partial_product(C, I, 4000, 64));
}
