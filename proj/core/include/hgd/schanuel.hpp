#pragma once

#include "hgd/equality.hpp"
#include "hgd/mpoly.hpp"
#include "hgd/recognizers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hgd {

// Roots rho + w and rho - w of one matched pair.
struct RootPair {
  BigRational rho;
  TowerElem w;
};

struct PairedRoots {
  TowerPtr tower;
  std::vector<RootPair> pairs;
  std::vector<std::pair<BigInt, int>> rational_roots;  // root, multiplicity
};

// One entry per matched pair; rational roots are listed separately.
// DomainError when the certificate does not validate.
PairedRoots pair_roots(const Factorization& fac, const MatchingCertificate& cert);

// w_k = real_part[k] + imag_part[k] * i + sum_j coeffs[k][j] * S[j], with
// {1, i} and S linearly independent over Q.
struct BasisResult {
  TowerPtr tower;
  std::vector<TowerElem> S;
  std::vector<std::size_t> chosen;     // indices of the maximal independent subset S'
  std::vector<BigInt> normalizers;     // S[j] = w_{chosen[j]} / normalizers[j]
  std::vector<BigRational> real_part;
  std::vector<BigRational> imag_part;
  std::vector<std::vector<BigInt>> coeffs;

  TowerElem reconstruct(std::size_t k) const;
};

// Greedy left-to-right selection by exact elimination on tower coordinates.
// With no elements, `tower` supplies the field (Q(i) when null).
BasisResult build_basis(const std::vector<TowerElem>& ws, TowerPtr tower = nullptr);

// Laurent polynomial in Pi = pi, E = e^{pi/L} and Y_j = e^{i pi s_j}
// asserting "limit - t = 0" after clearing denominators:
//   poly = numerator - t * denominator,  limit = numerator / denominator.
struct SymbolicIdentity {
  TowerPtr tower;
  long L = 1;
  std::vector<TowerElem> s;
  TowerMPoly numerator;
  TowerMPoly denominator;
  TowerMPoly poly;
  BigRational t;

  std::vector<std::string> names() const;
  // Symbols whose exponent is not the same in every term.
  std::vector<bool> involved() const;
  std::string str() const;
  ComplexInterval evaluate(const TowerMPoly& f, mpfr_prec_t prec) const;
};

// Identity built from scratch for a hand-written polynomial in Pi alone
// (or Pi, E) over Q.
SymbolicIdentity identity_over_q(const RatMPoly& poly, const BigRational& t, long L = 1);

struct IdentityInput {
  std::vector<RootPair> p_pairs;  // roots of p
  std::vector<RootPair> q_pairs;  // roots of q
  BigRational prefactor = 1;      // u0 times the Gamma values of the rational roots
  BigRational t;
};

SymbolicIdentity build_identity(const IdentityInput& in, const BasisResult& basis);

struct IdentityDecision {
  enum class Outcome { HoldsUnconditionally, FailsUnderSC };
  // Nonvanishing known without the conjecture: a polynomial in pi alone
  // (Lindemann), or in pi and one e^{pi sqrt(m)}-type symbol (Nesterenko).
  enum class FastPath { None, Constant, PiAlone, Nesterenko };
  Outcome outcome = Outcome::FailsUnderSC;
  FastPath fast_path = FastPath::None;
  bool unconditional() const { return outcome == Outcome::HoldsUnconditionally || fast_path != FastPath::None; }
  std::string str() const;
};

struct IdentityOptions {
  bool nesterenko_degeneration = true;
};

IdentityDecision decide_identity(const SymbolicIdentity& id, const IdentityOptions& opt = {});

// Interval evaluation of the identity from 256 bits, doubling until it
// excludes zero.  A persistent zero at the cap is recorded as a stress case.
struct IdentityEnclosure {
  bool separated = false;
  long bits = 0;
};
IdentityEnclosure enclose_identity(const SymbolicIdentity& id, const EngineConfig& cfg = {});
std::vector<std::string> schanuel_stress_cases();

// sign(limit - t) from the identity, escalating from 64 bits.
EqualityVerdict compare_identity(const SymbolicIdentity& id, const EngineConfig& cfg = {});

struct ConditionalOptions {
  IdentityOptions identity;
  bool galois_norm = false;  // also compute the rational norm of the identity
};

struct ConditionalVerdict {
  Verdict verdict;
  Conditionality conditionality = Conditionality::Unconditional;
  std::optional<SymbolicIdentity> identity_trace;
  std::optional<IdentityDecision> identity_decision;
  std::optional<IdentityEnclosure> identity_enclosure;
  std::optional<RatMPoly> norm;
  std::optional<Assumption1Result> assumption_p, assumption_q;
  std::optional<BasisResult> basis;
};

ConditionalVerdict decide_conditional(const HGInstance& inst, const EngineConfig& cfg = {},
                                      const ConditionalOptions& opt = {});

}  // namespace hgd
