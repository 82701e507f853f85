#include "hgd/schanuel.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

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

RatMPoly pi_poly(const std::vector<std::pair<int, BigRational>>& terms) {
  RatMPoly f(1);
  for (const auto& [e, c] : terms) f.add_term({e}, c);
  return f;
}

}  // namespace

TEST(Basis, RationalMultiplesOfI) {
  TowerPtr T = Tower::cyclotomic(4);
  TowerElem i = imaginary_unit(T);
  BasisResult b = build_basis({i * BigRational(3), i});
  EXPECT_TRUE(b.S.empty());
  EXPECT_EQ(b.imag_part[0], BigRational(3));
  EXPECT_EQ(b.imag_part[1], BigRational(1));
  EXPECT_EQ(b.real_part[0], BigRational(0));
}

TEST(Basis, IndependentSquareRoots) {
  TowerPtr T = Tower::multiquadratic({BigInt(-1), BigInt(2), BigInt(3)});
  TowerElem a = sqrt_in(T, BigInt(-2)), c = sqrt_in(T, BigInt(-3));
  BasisResult b = build_basis({a, c});
  EXPECT_EQ(b.chosen, (std::vector<std::size_t>{0, 1}));
  for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(b.reconstruct(k), k == 0 ? a : c);
}

TEST(Basis, CommonScaleIsNormalized) {
  TowerPtr T = Tower::multiquadratic({BigInt(-1), BigInt(3)});
  TowerElem r = sqrt_in(T, BigInt(-3));
  BasisResult b = build_basis({r * BigRational(3, 2), r * BigRational(1, 2)});
  ASSERT_EQ(b.S.size(), 1u);
  EXPECT_EQ(b.S[0], r * BigRational(1, 2));
  EXPECT_EQ(b.coeffs[0][0], BigInt(3));
  EXPECT_EQ(b.coeffs[1][0], BigInt(1));
}

TEST(Identity, PolynomialsInPiAlone) {
  // pi - 22/7 != 0 by Lindemann
  SymbolicIdentity id = identity_over_q(pi_poly({{1, BigRational(1)}, {0, BigRational(-22, 7)}}), BigRational(22, 7));
  IdentityDecision d = decide_identity(id);
  EXPECT_EQ(d.outcome, IdentityDecision::Outcome::FailsUnderSC);
  EXPECT_EQ(d.fast_path, IdentityDecision::FastPath::PiAlone);
  EXPECT_TRUE(d.unconditional());
  EqualityVerdict v = compare_identity(id);
  EXPECT_EQ(v.relation, Relation::Less);  // pi < 22/7

  SymbolicIdentity zero = identity_over_q(pi_poly({}), BigRational(1));
  EXPECT_EQ(decide_identity(zero).outcome, IdentityDecision::Outcome::HoldsUnconditionally);

  SymbolicIdentity cst = identity_over_q(pi_poly({{0, BigRational(5)}}), BigRational(1));
  IdentityDecision c = decide_identity(cst);
  EXPECT_EQ(c.fast_path, IdentityDecision::FastPath::Constant);
}

TEST(Identity, EnclosureSeparatesNonzeroIdentity) {
  SymbolicIdentity id = identity_over_q(pi_poly({{2, BigRational(1)}, {0, BigRational(-987, 100)}}), BigRational(1));
  IdentityEnclosure e = enclose_identity(id);
  EXPECT_TRUE(e.separated);
  EXPECT_GE(e.bits, 256);
}

TEST(Conditional, AgreesWithUnconditionalOnImaginaryRoots) {
  for (const std::string t : {"1/13", "1/14", "1/117", "5/13"}) {
    HGInstance I = make("x^2 - 4x + 13", "x^2 - 4x + 5", "1", t);
    Verdict u = decide_unconditional(I);
    ConditionalVerdict c = decide_conditional(I);
    EXPECT_EQ(c.verdict.outcome, u.outcome) << t;
    EXPECT_EQ(c.verdict.witness, u.witness) << t;
  }
  HGInstance thr = make("x^2 - 4x + 13", "x^2 - 4x + 5", "1", "1/26", Problem::Threshold);
  EXPECT_EQ(decide_conditional(thr).verdict.witness, 3);
}

TEST(Conditional, RealQuadraticRootsAreLabelled) {
  HGInstance I = make("x^2 - 2x - 1", "x^2 - 2x - 4", "1", "-4");
  ConditionalVerdict c = decide_conditional(I);
  ASSERT_TRUE(c.assumption_p && c.assumption_q);
  EXPECT_TRUE(c.assumption_p->holds);
  EXPECT_TRUE(c.assumption_q->holds);
  EXPECT_EQ(c.verdict.outcome, Verdict::Outcome::NotMember);
  EXPECT_EQ(c.conditionality, Conditionality::ConditionalOnSchanuel);
  EXPECT_FALSE(oracle::first_hit(I, 10000).has_value());
}

TEST(Conditional, RealQuadraticScanHitIsUnconditional) {
  HGInstance I = make("x^2 - 2x - 1", "x^2 - 2x - 4", "1", "4");  // u_1 = q(0)/p(0)
  ConditionalVerdict c = decide_conditional(I);
  EXPECT_EQ(c.verdict.outcome, Verdict::Outcome::Member);
  EXPECT_EQ(c.verdict.witness, 1);
  EXPECT_EQ(c.conditionality, Conditionality::Unconditional);
}

TEST(Conditional, FailingAssumptionIsUnsupported) {
  HGInstance I = make("x^3 - 2", "x^3 - 3", "1", "1/2");
  EXPECT_THROW(decide_conditional(I), UnsupportedError);
}

TEST(Conditional, StressListIsReadable) {
  for (const auto& s : schanuel_stress_cases()) EXPECT_FALSE(s.empty());
}
