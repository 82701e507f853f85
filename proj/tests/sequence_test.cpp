#include "hgd/sequence.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hgd;

namespace {

HGInstance make(const std::string& p, const std::string& q, const std::string& u0, const std::string& t,
                Problem problem = Problem::Membership) {
  HGInstance I;
  I.p = parse_int_poly(p);
  I.q = parse_int_poly(q);
  I.u0 = BigRational::parse(u0);
  I.t = BigRational::parse(t);
  I.problem = problem;
  return I;
}

BigRational from_oracle(const oracle::ExactTerm& u) { return BigRational(BigInt(u.num), BigInt(u.den)); }

}  // namespace

TEST(Term, MatchesHandComputedValues) {
  HGInstance I = make("x^2 - 4x + 13", "x^2 - 4x + 5", "1", "0");
  EXPECT_EQ(term(I, 0), BigRational(1));
  EXPECT_EQ(term(I, 1), BigRational::parse("5/13"));
  EXPECT_EQ(term(I, 2), BigRational::parse("1/13"));
  EXPECT_EQ(term(I, 3), BigRational::parse("1/117"));
}

TEST(Scanner, AgreesWithOracleOnRandomInstances) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    HGInstance I;
    I.p = IntPoly{std::abs(c(rng) * c(rng)) + 60, c(rng), 1};
    I.q = IntPoly{c(rng), c(rng), 1};
    I.u0 = BigRational(BigInt(c(rng) + 20), BigInt(7));
    SequenceScanner s(I);
    const BigRational tb = term(I, 25);
    mpq_class t = oracle::to_mpq(tb);
    for (long n = 0; n <= 60; ++n) {
      oracle::ExactTerm u = oracle::exact_term(I, n);
      ASSERT_EQ(s.index(), n);
      EXPECT_EQ(s.sign(), sgn(u.num) * sgn(u.den));
      EXPECT_EQ(s.compare(tb), oracle::cmp(u, t)) << I.p.str() << " n=" << n;
      EXPECT_EQ(s.compare_abs(tb), oracle::cmp_abs(u, t));
      if (n % 20 == 0) EXPECT_EQ(s.value(), from_oracle(u));
      s.advance();
    }
  }
}

TEST(Scanner, ExactHitsAreFound) {
  HGInstance I = make("x^2 - 4x + 13", "x^2 - 4x + 5", "1", "1/117");
  SequenceScanner s(I);
  while (s.index() < 3) s.advance();
  EXPECT_TRUE(s.equals(I.t));
  s.advance();
  EXPECT_FALSE(s.equals(I.t));
}

TEST(Classify, AsymptoticClasses) {
  using K = AsymptoticClass::Kind;
  EXPECT_EQ(classify(parse_int_poly("x+1"), parse_int_poly("2x^2+1")).kind, K::DivergesToInfinity);
  EXPECT_EQ(classify(parse_int_poly("x^2+1"), parse_int_poly("2x+1")).kind, K::ConvergesToZeroLimitRatio);
  auto two = classify(parse_int_poly("x+1"), parse_int_poly("2x+1"));
  EXPECT_EQ(two.kind, K::ConvergesTo);
  EXPECT_EQ(two.ratio_limit, BigRational(2));
  EXPECT_TRUE(two.diverges());
  EXPECT_TRUE(classify(parse_int_poly("3x+1"), parse_int_poly("2x+1")).shrinks());
  auto one = classify(parse_int_poly("x^2 - 4x + 13"), parse_int_poly("x^2 - 4x + 5"));
  EXPECT_EQ(one.kind, K::RatioLimitOne);
  EXPECT_TRUE(one.harmonious());
  auto grow = classify(parse_int_poly("x + 1"), parse_int_poly("x + 3"));
  EXPECT_EQ(grow.A, BigRational(2));
  EXPECT_TRUE(grow.diverges());
  auto shrink = classify(parse_int_poly("x + 3"), parse_int_poly("x + 1"));
  EXPECT_TRUE(shrink.shrinks());
  EXPECT_EQ(classify(parse_int_poly("x + 1"), parse_int_poly("-x + 1")).kind, K::RatioLimitMinusOne);
}

TEST(Bounds, DivergentTermsStayAboveTarget) {
  HGInstance I = make("x + 1", "3x + 2", "1", "1000000");
  SearchBound b = divergence_bound(I);
  mpq_class t = oracle::to_mpq(I.t);
  for (long n = b.N; n < b.N + 40; ++n) EXPECT_GT(oracle::cmp_abs(oracle::exact_term(I, n), t), 0) << n;
  EXPECT_GE(b.N, b.ratio_from);
}

TEST(Bounds, ShrinkingTermsStayBelowTarget) {
  HGInstance I = make("x^2 + 3x + 5", "x^2 + x + 1", "1000", "1/1000");
  SearchBound b = shrink_bound(I);
  mpq_class t = oracle::to_mpq(I.t);
  for (long n = b.N; n < b.N + 40; ++n) EXPECT_LT(oracle::cmp_abs(oracle::exact_term(I, n), t), 0) << n;
}

TEST(Bounds, RatioIndexMakesRatioDominate) {
  IntPoly p = parse_int_poly("x^2 + 40x + 7"), q = parse_int_poly("x^2 + 41x - 30");
  std::int64_t k = ratio_index(p, q, true);
  for (long n = k; n < k + 500; ++n) EXPECT_GT(abs(oracle::eval(q, n)), abs(oracle::eval(p, n))) << n;
  std::int64_t s = ratio_index(q, p, false);
  for (long n = s; n < s + 500; ++n) EXPECT_LT(abs(oracle::eval(p, n)), abs(oracle::eval(q, n))) << n;
}

TEST(Monotonicity, RatioKeepsItsSideBeyondK0) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-30, 30);
  for (int trial = 0; trial < 50; ++trial) {
    long b = c(rng);
    IntPoly p{c(rng), b, 1}, q{c(rng), b, 1};
    if (p == q) continue;
    std::int64_t K0 = monotonicity_index(p, q);
    int want = sgn(oracle::eval(q, 0) - oracle::eval(p, 0));  // q - p is constant here
    for (long k = K0; k < K0 + 200; ++k) {
      mpz_class pk = oracle::eval(p, k), qk = oracle::eval(q, k);
      ASSERT_GT(pk, 0);
      ASSERT_GT(qk, 0);
      EXPECT_EQ(sgn(qk - pk), want);
    }
  }
}

TEST(IntegerRoots, FirstNonnegative) {
  EXPECT_EQ(first_nonnegative_integer_root(parse_int_poly("(x-4)*(x-2)*(x+1)")), 2);
  EXPECT_FALSE(first_nonnegative_integer_root(parse_int_poly("x^2 + 1")).has_value());
  EXPECT_EQ(first_nonnegative_integer_root(parse_int_poly("x^3 - x")), 0);
}

TEST(BruteForce, MatchesOracle) {
  HGInstance mem = make("x^2 - 4x + 13", "x^2 - 4x + 5", "1", "1/13");
  auto r = brute_force(mem, 50);
  EXPECT_EQ(r.kind, BruteForceResult::Kind::FoundMembership);
  EXPECT_EQ(r.n, 2);
  EXPECT_EQ(oracle::first_hit(mem, 50), 2);

  HGInstance thr = make("x^2 - 4x + 13", "x^2 - 4x + 5", "1", "1/26", Problem::Threshold);
  auto f = brute_force(thr, 50);
  EXPECT_EQ(f.kind, BruteForceResult::Kind::ThresholdViolation);
  EXPECT_EQ(f.n, 3);

  HGInstance none = make("x + 2", "x + 1", "1", "2/7");
  auto g = brute_force(none, 100);
  EXPECT_EQ(g.kind, BruteForceResult::Kind::NoneUpTo);
  EXPECT_EQ(g.n, 100);
}

TEST(Validate, RejectsNonnegativeIntegerRootsOfP) {
  HGInstance I = make("x - 3", "x + 1", "1", "1");
  EXPECT_THROW(I.validate(), DomainError);
  HGInstance J = make("x + 3", "0", "1", "1");
  EXPECT_THROW(J.validate(), DomainError);
}
