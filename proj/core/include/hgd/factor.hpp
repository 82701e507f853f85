#pragma once

#include "hgd/config.hpp"
#include "hgd/numeric.hpp"
#include "hgd/polynomial.hpp"

#include <string>
#include <vector>

namespace hgd {

enum class FactorShape { Linear, Quadratic, Cyclotomic, Radical, Biquadratic, Other };

std::string to_string(FactorShape s);

// Roots of a Biquadratic factor are tr/4 + (e1*s1*sqrt(c1) + e2*s2*sqrt(c2) + e3*s3*sqrt(c3))/4
// with the sign patterns (+,+,+), (+,-,-), (-,+,-), (-,-,+).
struct BiquadraticData {
  BigInt trace;
  BigInt core[3];   // squarefree parts (0 when the corresponding sum vanishes)
  BigInt scale[3];  // e_k >= 0
  int sign[3];      // orientation of the first root
};

struct FactorInfo {
  IntPoly poly;  // irreducible, primitive, positive leading coefficient
  int multiplicity = 1;
  FactorShape shape = FactorShape::Other;

  BigRational linear_root;  // Linear
  BigInt disc_core;         // Quadratic: discriminant = disc_scale^2 * disc_core
  BigInt disc_scale;
  long order = 0;           // Cyclotomic: n with poly(x) = Phi_n(x - shift); Radical: d
  BigInt shift;             // Cyclotomic / Radical
  BigInt radicand;          // Radical: poly(x) = (x - shift)^d - radicand
  BiquadraticData biquad{};

  std::vector<Complex> roots;  // numeric approximations, one per distinct root

  int degree() const { return poly.degree(); }
  bool rational_roots() const { return degree() == 1; }
};

struct Factorization {
  BigInt content = 1;  // leading scalar: f = content * prod poly^mult
  std::vector<FactorInfo> factors;
  int degree() const;
};

// Complete factorization over Q of a nonzero integer polynomial.  Candidate
// factors come from numeric root subsets and are accepted only after exact
// division; the search budget raises ResourceError when exceeded.
Factorization factor_over_q(const IntPoly& f, const EngineConfig& cfg = {});

// Shape recognition for an irreducible primitive factor (numeric roots supplied).
void classify_shape(FactorInfo& fi);

// Integer roots (nonnegative or not) of f, found exactly.
std::vector<BigInt> integer_roots(const IntPoly& f);

bool is_irreducible(const IntPoly& f, const EngineConfig& cfg = {});

}  // namespace hgd
