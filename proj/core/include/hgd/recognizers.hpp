#pragma once

#include "hgd/factor.hpp"
#include "hgd/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hgd {

// One copy of an irrational root: factors[factor].roots[root], copy < multiplicity.
struct RootVertex {
  std::size_t factor = 0;
  std::size_t root = 0;
  int copy = 0;
};

struct MatchedPair {
  std::size_t u = 0, v = 0;  // vertex ids
  BigInt k;                  // u + v = k, so rho = k/2
  BigRational rho() const { return BigRational(k, 2); }
  std::optional<TowerElem> u_exact, v_exact, w;  // w = (u - v)/2 when a tower is available
};

struct MatchingCertificate {
  std::vector<RootVertex> vertices;
  std::vector<MatchedPair> pairs;
  TowerPtr tower;  // null when the roots have no supported tower
};

struct Assumption1Result {
  bool holds = false;
  Factorization factorization;
  std::vector<RootVertex> vertices;
  std::vector<std::vector<std::size_t>> adjacency;
  MatchingCertificate certificate;                          // valid when holds
  std::vector<std::pair<std::size_t, std::size_t>> best;  // maximum matching when !holds
  std::string message() const;
};

// Symmetry-graph analysis.  Edges are decided exactly at the factor level:
// roots u of h1 and v of h2 satisfy u + v = k in Z exactly when
// h2(x) = (-1)^n h1(k - x) and v = k - u.  When the roots fit a supported
// tower (tower argument or one built from f), every pair is re-checked there.
Assumption1Result check_assumption1(const IntPoly& f, const EngineConfig& cfg = {}, TowerPtr tower = nullptr);

// Independent validator for a certificate against the factorization of f.
// Returns an empty string when valid, otherwise a diagnostic.
std::string validate_matching(const Factorization& fac, const MatchingCertificate& cert);

struct ClassCWitness {
  BigRational rho;
  RatPoly g;  // monic, f = lead * g((x - rho)^2), g has a negative real root
};
std::optional<ClassCWitness> recognize_classC(const RatPoly& f);
inline std::optional<ClassCWitness> recognize_classC(const IntPoly& f) { return recognize_classC(to_rat(f)); }

// rho with f(rho + x) = f(rho - x), if any.
std::optional<BigRational> detect_shifted_even(const RatPoly& f);
inline std::optional<BigRational> detect_shifted_even(const IntPoly& f) { return detect_shifted_even(to_rat(f)); }

struct RadicalFamily {
  enum class Kind { XdMinusA, Cyclotomic, Neither } kind = Kind::Neither;
  long d = 0;  // exponent d or cyclotomic index n
  BigInt a;    // radicand for XdMinusA
  bool eligible = false;
  std::string str() const;
};
RadicalFamily check_radical_family(const IntPoly& f, const EngineConfig& cfg = {});

}  // namespace hgd
