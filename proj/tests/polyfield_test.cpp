#include "hgd/factor.hpp"
#include "hgd/numeric_roots.hpp"
#include "hgd/polynomial.hpp"
#include "hgd/roots.hpp"
#include "hgd/tower.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hgd;

namespace {

IntPoly P(const std::string& s) { return parse_int_poly(s); }

IntPoly expand(const Factorization& fac) {
  IntPoly r{fac.content};
  for (const auto& fi : fac.factors) r = r * fi.poly.pow(static_cast<unsigned>(fi.multiplicity));
  return r;
}

}  // namespace

TEST(Polynomial, ParsesCommonSpellings) {
  EXPECT_EQ(P("x^4 - 2*x^2 + 1"), (IntPoly{1, 0, -2, 0, 1}));
  EXPECT_EQ(P("x**3-2"), (IntPoly{-2, 0, 0, 1}));
  EXPECT_EQ(P("3x+1"), (IntPoly{1, 3}));
  EXPECT_EQ(P("n^2 - 4n + 13"), (IntPoly{13, -4, 1}));
  EXPECT_EQ(P("-x"), (IntPoly{0, -1}));
  EXPECT_THROW(P("x^"), ParseError);
  EXPECT_THROW(P("x + y"), ParseError);
}

TEST(Polynomial, DivisionAndGcd) {
  RatPoly a = to_rat(P("x^4 - 1")), b = to_rat(P("x^2 + 3x + 2"));
  auto [q, r] = divrem(a, b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_LT(r.degree(), b.degree());
  EXPECT_EQ(gcd(a, b), to_rat(P("x + 1")));
  EXPECT_EQ(exact_div(P("x^4 - 1"), P("x - 1")), P("x^3 + x^2 + x + 1"));
  EXPECT_THROW(exact_div(P("x^4 - 1"), P("x - 2")), DomainError);
}

TEST(Polynomial, SquarefreeDecomposition) {
  RatPoly f = to_rat(P("(x+1)") * P("x-2").pow(2) * P("x^2+1").pow(3));
  auto parts = squarefree_decomposition(f);
  RatPoly back = RatPoly::constant(f.lead());
  for (const auto& [g, m] : parts) back = back * g.pow(static_cast<unsigned>(m));
  EXPECT_EQ(back, f);
  for (const auto& [g, m] : parts) {
    if (m == 3) EXPECT_EQ(g, to_rat(P("x^2+1")));
  }
}

TEST(Polynomial, CyclotomicProductIdentity) {
  // x^n - 1 = prod_{d | n} Phi_d
  for (long n : {1L, 6L, 12L, 18L, 20L, 24L, 30L}) {
    IntPoly prod{1};
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic(d);
    IntPoly xn = IntPoly::monomial(BigInt(1), static_cast<std::size_t>(n)) - IntPoly{1};
    EXPECT_EQ(prod, xn) << n;
    EXPECT_EQ(cyclotomic(n).degree(), euler_phi(n));
  }
  EXPECT_EQ(cyclotomic(12), P("x^4 - x^2 + 1"));
  EXPECT_EQ(mobius(30), -1);
}

TEST(Polynomial, RootBoundEnclosesAllRoots) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-50, 50);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<BigInt> v;
    int deg = 2 + trial % 6;
    for (int i = 0; i < deg; ++i) v.push_back(c(rng));
    v.push_back(1);
    IntPoly f(v);
    RatPoly g = to_rat(f);
    auto sq = squarefree_decomposition(g);
    BigRational B = cauchy_bound(f);
    for (const auto& [h, m] : sq) {
      IntPoly hi = primitive_part(h);
      if (hi.degree() < 1) continue;
      for (const auto& z : approximate_roots(hi, 128)) {
        double mod = std::hypot(z.re.to_double(), z.im.to_double());
        EXPECT_LT(mod, B.to_double()) << f.str();
      }
    }
  }
}

TEST(Polynomial, SturmCounts) {
  RatPoly f = to_rat(P("(x+3)") * P("x^2-2") * P("x^2+1"));
  EXPECT_EQ(count_negative_roots(f), 2);
  EXPECT_EQ(count_real_roots(f, BigRational(0), BigRational(2)), 1);
}

TEST(Factor, ReconstructsAndClassifies) {
  const std::vector<std::string> cases = {
      "x^4 - x^2 + 1", "(x^2-2)^2*(x+5)", "x^6 - 3", "x^4 - 5x^3 - 71x^2 + 120x + 1044", "6x^3 + 11x^2 + 6x + 1",
      "x^8 - 1", "(x^2 - 4x + 13)*(x^2 - 4x + 5)"};
  for (const auto& s : cases) {
    IntPoly f = P(s);
    Factorization fac = factor_over_q(f);
    EXPECT_EQ(expand(fac), f) << s;
    for (const auto& fi : fac.factors) EXPECT_TRUE(is_irreducible(fi.poly)) << fi.poly.str();
  }
  auto shape_of = [](const std::string& s) { return factor_over_q(P(s)).factors.at(0).shape; };
  EXPECT_EQ(shape_of("x^4 - x^2 + 1"), FactorShape::Cyclotomic);
  EXPECT_EQ(shape_of("x^6 - 3"), FactorShape::Radical);
  EXPECT_EQ(shape_of("x^2 - 4x + 13"), FactorShape::Quadratic);
  EXPECT_EQ(shape_of("x^4 - 5x^3 - 71x^2 + 120x + 1044"), FactorShape::Biquadratic);
  EXPECT_FALSE(is_irreducible(P("x^4 + 4")));  // Sophie Germain
  EXPECT_EQ(integer_roots(P("(x-3)*(x+7)*(x^2+1)")).size(), 2u);
}

TEST(Roots, QuadraticSplittingInGaussianField) {
  auto r = roots_quadratic(P("(x^2 - 4x + 13)*(x^2 - 4x + 5)*(x+2)"));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->field_d, BigInt(-1));
  EXPECT_EQ(r->total_multiplicity(), 5);
  bool found = false;
  for (const auto& e : r->entries)
    if (e.value == QuadElem(2, 3, -1)) found = true;
  EXPECT_TRUE(found);
  EXPECT_FALSE(roots_quadratic(P("x^3 - 2")).has_value());
  auto mixed = roots_quadratic(P("(x^2+1)*(x^2+2)"));
  ASSERT_TRUE(mixed.has_value());
  EXPECT_TRUE(mixed->mixed_fields());
}

TEST(Tower, MultiquadraticArithmetic) {
  TowerPtr t = Tower::multiquadratic({BigInt(2), BigInt(3)});
  TowerElem r2 = sqrt_in(t, BigInt(2)), r3 = sqrt_in(t, BigInt(3)), r6 = sqrt_in(t, BigInt(6));
  EXPECT_EQ(r2 * r3, r6);
  EXPECT_EQ(r6 * r6, TowerElem::rational(t, 6));
  TowerElem x = r2 + r3;
  EXPECT_EQ(x * x.inverse(), TowerElem::one(t));
  EXPECT_THROW(sqrt_in(t, BigInt(5)), UnsupportedError);
}

TEST(Tower, CyclotomicRootsOfUnity) {
  TowerPtr t = Tower::cyclotomic(12);
  TowerElem z = root_of_unity_in(t, 12, 1);
  EXPECT_EQ(z.pow(12), TowerElem::one(t));
  EXPECT_NE(z.pow(6), TowerElem::one(t));
  EXPECT_EQ(imaginary_unit(t) * imaginary_unit(t), TowerElem::rational(t, -1));
  EXPECT_EQ(automorphisms(t).size(), 4u);
}

TEST(Tower, FactorRootsSatisfyTheirPolynomial) {
  for (const std::string s : {"x^4 - x^2 + 1", "x^4 - 2", "x^2 - 2x - 1", "x^8 + 1", "x^4 - 5x^3 - 71x^2 + 120x + 1044"}) {
    Factorization fac = factor_over_q(P(s));
    TowerPtr t = build_tower(tower_request(fac));
    for (const auto& fi : fac.factors) {
      auto roots = roots_in_tower(fi, t);
      ASSERT_EQ(roots.size(), static_cast<std::size_t>(fi.degree())) << s;
      for (const auto& r : roots) {
        TowerElem acc = TowerElem::zero(t);
        const auto& c = fi.poly.coeffs();
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + BigRational(*it);
        EXPECT_TRUE(acc.is_zero()) << s << " root " << r.str();
      }
    }
  }
}
