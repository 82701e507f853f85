#include "hgd/recognizers.hpp"

#include <gtest/gtest.h>

using namespace hgd;

namespace {
IntPoly P(const std::string& s) { return parse_int_poly(s); }
}  // namespace

TEST(Assumption1, EvenAndCyclotomicFamiliesMatch) {
  for (const std::string s : {"x^4 - x^2 + 1", "x^8 + 1", "x^4 - 2", "x^6 - 3", "x^2 - x + 1", "x^2 - 4x + 13",
                              "(x^2 - 2x - 1)*(x^2 - 2x - 4)", "(x^2 + 1)^2", "x^3 + x"}) {
    Assumption1Result r = check_assumption1(P(s));
    EXPECT_TRUE(r.holds) << s << ": " << r.message();
    EXPECT_EQ(validate_matching(r.factorization, r.certificate), "") << s;
    EXPECT_EQ(r.certificate.pairs.size() * 2, r.vertices.size()) << s;
  }
}

TEST(Assumption1, ReportsMaximumMatching) {
  Assumption1Result r = check_assumption1(P("x^6 - x^3 + 1"));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.message(), "Assumption 1: NO (max matching size 0 of 6 vertices)");
  Assumption1Result s = check_assumption1(P("x^4 - 4x^2 - 8x + 2"));
  EXPECT_FALSE(s.holds);
  // x^2 - 2 pairs with itself, x^3 - 2 has no partner for its roots
  Assumption1Result t = check_assumption1(P("(x^2 - 2)*(x^3 - 2)"));
  EXPECT_FALSE(t.holds);
  EXPECT_EQ(t.best.size(), 1u);
}

TEST(Assumption1, PairsAcrossFactors) {
  // roots 1 +- sqrt(2) and 3 +- sqrt(2): u + v = 4 pairs across the factors
  Assumption1Result r = check_assumption1(P("(x^2 - 2x - 1)*(x^2 - 6x + 7)"));
  ASSERT_TRUE(r.holds);
  for (const auto& pr : r.certificate.pairs) EXPECT_TRUE(pr.rho().is_half_integer_multiple());
}

TEST(Assumption1, ValidatorRejectsTamperedCertificate) {
  Assumption1Result r = check_assumption1(P("x^4 - x^2 + 1"));
  ASSERT_TRUE(r.holds);
  MatchingCertificate bad = r.certificate;
  bad.pairs[0].k += 2;
  EXPECT_NE(validate_matching(r.factorization, bad), "");
  MatchingCertificate missing = r.certificate;
  missing.pairs.pop_back();
  EXPECT_NE(validate_matching(r.factorization, missing), "");
}

TEST(Assumption1, RejectsNonMonicInput) { EXPECT_THROW(check_assumption1(P("2x^2 + 1")), DomainError); }

TEST(ClassC, RecoversShiftAndInnerPolynomial) {
  // g(y) = y + 9 at y = (x - 2)^2: x^2 - 4x + 13
  auto w = recognize_classC(P("x^2 - 4x + 13"));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->rho, BigRational(2));
  EXPECT_EQ(w->g, to_rat(P("x + 9")));
  // half-integer shift: (x - 1/2)^2 + 3/4 = x^2 - x + 1
  auto h = recognize_classC(P("x^2 - x + 1"));
  ASSERT_TRUE(h.has_value());
  EXPECT_EQ(h->rho, BigRational::parse("1/2"));
  EXPECT_EQ(h->g, RatPoly({BigRational::parse("3/4"), BigRational(1)}));
}

TEST(ClassC, RejectsPolynomialsWithoutRationalRealPart) {
  EXPECT_FALSE(recognize_classC(P("x^4 - 5x^3 - 71x^2 + 120x + 1044")));
  EXPECT_FALSE(recognize_classC(P("x^4 - x^3 - 16x^2 + 37x - 17")));
  EXPECT_FALSE(recognize_classC(P("x^3 - 2")));
  // even, but g = y^2 - 3y + 2 has only positive roots
  EXPECT_FALSE(recognize_classC(P("x^4 - 3x^2 + 2")));
}

TEST(ShiftedEven, FindsCentre) {
  EXPECT_EQ(detect_shifted_even(P("x^2 - 4x + 13")), BigRational(2));
  EXPECT_EQ(detect_shifted_even(P("x^4 + 1")), BigRational(0));
  EXPECT_FALSE(detect_shifted_even(P("x^3 + x + 1")).has_value());
}

TEST(RadicalFamily, ClassifiesEligibility) {
  auto phi12 = check_radical_family(P("x^4 - x^2 + 1"));
  EXPECT_EQ(phi12.kind, RadicalFamily::Kind::Cyclotomic);
  EXPECT_EQ(phi12.d, 12);
  EXPECT_TRUE(phi12.eligible);
  auto phi18 = check_radical_family(P("x^6 - x^3 + 1"));
  EXPECT_EQ(phi18.kind, RadicalFamily::Kind::Cyclotomic);
  EXPECT_FALSE(phi18.eligible);
  auto rad = check_radical_family(P("x^6 - 3"));
  EXPECT_EQ(rad.kind, RadicalFamily::Kind::XdMinusA);
  EXPECT_EQ(rad.a, BigInt(3));
  EXPECT_TRUE(rad.eligible);
  EXPECT_FALSE(check_radical_family(P("x^3 - 2")).eligible);
  EXPECT_EQ(check_radical_family(P("x^4 - 4x^2 - 8x + 2")).kind, RadicalFamily::Kind::Neither);
}
