#pragma once

#include "hgd/constant_expr.hpp"
#include "hgd/quadelem.hpp"
#include "hgd/roots.hpp"
#include "hgd/sequence.hpp"

#include <string>
#include <vector>

namespace hgd {

// prod Gamma(numerator) / prod Gamma(denominator), times `prefactor`.
struct GammaProduct {
  std::vector<QuadElem> numerator;    // -(roots of p), with multiplicity
  std::vector<QuadElem> denominator;  // -(roots of q), with multiplicity
  std::int64_t k0 = 0;                // the product starts at k0
  BigRational prefactor = 1;          // prod_{k<k0} r(k)
};

// Requires a harmonious pair whose q has no nonnegative integer root.
GammaProduct limit_as_gamma(const IntPoly& p, const IntPoly& q, const RootMultiset& roots_p,
                            const RootMultiset& roots_q);

struct ShiftResult {
  QuadElem A;        // Gamma(arg) = A * Gamma(base)
  bool half = false; // base = 1/2 + w instead of w
  QuadElem w;        // purely irrational part b*sqrt(d) (zero for rational args)
  BigRational base_rational;  // rational base (1 or 1/2) for rational args
};
ShiftResult shift_to_base(const QuadElem& arg);

struct PairForm {
  enum class Kind { IntegerRho, HalfIntegerRho };
  BigRational rho;
  QuadElem w{BigRational(0), BigRational(0), BigInt(-1)};  // b*sqrt(d), d < 0, b > 0
  Kind kind = Kind::IntegerRho;
  BigRational A;  // Gamma(rho+w)Gamma(rho-w) = A * closed_form
  // Closed form: IntegerRho  pi / (y sinh(pi y)),  HalfIntegerRho  pi / cosh(pi y),  y = b sqrt|d|.
  ConstExpr closed_form() const;
  ConstExpr value() const { return ConstExpr::rational(A) * closed_form(); }
};
PairForm pair_product(const BigRational& rho, const QuadElem& w);

// theta * pi^ell * f(x) / g(x) with x = e^{pi sqrt(m) / D}.
struct CanonicalConstant {
  QuadElem theta{BigRational(1), BigRational(0), BigInt(-1)};  // in Q(sqrt(m)); d = -1 placeholder when m = 1
  long ell = 0;
  IntPoly f{BigInt(1)};
  IntPoly g{BigInt(1)};
  BigInt m = 1;
  long D = 1;
  bool base_trivial = true;

  ConstExpr theta_expr() const;
  ConstExpr expr() const;
  Interval enclose(long bits, long cap_bits = 65536) const;
  std::string str() const;
};

CanonicalConstant canonicalize(const GammaProduct& gp, const BigRational& prefactor);

// Limit of u_n for a monic harmonious instance with roots over Q or one
// imaginary quadratic field; the product start index is always 0 here.
CanonicalConstant limit_constant(const HGInstance& inst, const EngineConfig& cfg = {});

// Envelope E with |log prod_{k>=K} r(k)| <= E; K is raised to the first index
// where the bound is valid.
struct TailEnvelope {
  std::int64_t K = 0;
  BigRational E;
};
TailEnvelope tail_envelope(const IntPoly& p, const IntPoly& q, std::int64_t K);

// Checks that the enclosure of C overlaps u0 * prod_{k<K} r(k) * exp([-E, E]).
bool matches_partial_product(const CanonicalConstant& C, const HGInstance& inst, std::int64_t K, long bits);

}  // namespace hgd
