#pragma once

#include "hgd/config.hpp"
#include "hgd/polynomial.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace hgd {

enum class Problem { Membership, Threshold };
std::string to_string(Problem p);

struct HGInstance {
  IntPoly p;
  IntPoly q;
  BigRational u0;
  BigRational t;
  Problem problem = Problem::Membership;

  bool monic() const { return p.is_monic() && q.is_monic(); }
  // p, q nonzero and p without nonnegative integer roots; DomainError otherwise.
  void validate() const;
};

// u_n = u0 * prod_{k<n} q(k)/p(k), evaluated exactly.
BigRational term(const HGInstance& inst, std::int64_t n, const EngineConfig& cfg = {});

// Forward scan over u_0, u_1, ...  Signs are exact; comparisons with a target
// use a log-magnitude and residue filter and fall back to exact arithmetic
// (kept in lockstep from then on) whenever the filter is inconclusive.
class SequenceScanner {
 public:
  SequenceScanner(IntPoly p, IntPoly q, BigRational u0);
  explicit SequenceScanner(const HGInstance& inst) : SequenceScanner(inst.p, inst.q, inst.u0) {}
  ~SequenceScanner();
  SequenceScanner(SequenceScanner&&) noexcept;
  SequenceScanner& operator=(SequenceScanner&&) noexcept;

  std::int64_t index() const { return n_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool equals(const BigRational& t);
  int compare(const BigRational& t);      // sign(u_n - t)
  int compare_abs(const BigRational& t);  // sign(|u_n| - |t|)
  BigRational value();
  void advance();
  bool exact_mode() const { return exact_ != nullptr; }

 private:
  struct Exact;
  struct Approx;
  void ensure_exact();
  void ensure_approx();
  int approx_compare(const BigRational& t, bool absolute);
  long double log_target(const BigRational& t) const;

  IntPoly p_, q_;
  BigRational u0_;
  std::int64_t n_ = 0;
  int sign_ = 0;
  long double log2_abs_ = 0;  // log2 |u_n| when nonzero
  std::uint64_t residue_ = 0;  // u_n = residue_ / residue_den_ mod 2^61 - 1
  std::uint64_t residue_den_ = 1;
  bool residue_ok_ = true;
  std::unique_ptr<Exact> exact_;
  std::unique_ptr<Approx> approx_;  // outward-rounded enclosure, started near the target
};

struct AsymptoticClass {
  enum class Kind { DivergesToInfinity, ConvergesToZeroLimitRatio, ConvergesTo, RatioLimitOne, RatioLimitMinusOne };
  Kind kind = Kind::RatioLimitOne;
  BigRational ratio_limit;  // ConvergesTo: lead(q)/lead(p)
  BigRational A;            // RatioLimitOne: sum of roots of p minus sum of roots of q
  bool harmonious() const { return kind == Kind::RatioLimitOne && A.is_zero(); }
  bool diverges() const;  // |u_n| -> infinity for nonzero u
  bool shrinks() const;   // u_n -> 0
  std::string str() const;
};

AsymptoticClass classify(const IntPoly& p, const IntPoly& q);

struct SearchBound {
  enum class Justification { RatioExceedsTarget, ProductMonotoneBeyond, TailBelowTarget };
  std::int64_t N = 0;
  std::int64_t ratio_from = 0;  // |r(n)| on the guaranteed side of 1 for n >= ratio_from
  Justification justification = Justification::RatioExceedsTarget;
};
std::string to_string(SearchBound::Justification j);

// N with |u_n| > |t| and |r(n)| > 1 for all n >= N.
SearchBound divergence_bound(const HGInstance& inst, const EngineConfig& cfg = {});
// N with |u_n| < |t| and |r(n)| < 1 for all n >= N.
SearchBound shrink_bound(const HGInstance& inst, const EngineConfig& cfg = {});

// Index from which |r(n)| stays above 1 (divergent) or below 1 (shrinking).
std::int64_t ratio_index(const IntPoly& p, const IntPoly& q, bool divergent);

// K0 beyond which p, q are positive, r(k) > 0 and r(k) - 1 has the sign of lead(q - p).
std::int64_t monotonicity_index(const IntPoly& p, const IntPoly& q);

// Smallest k >= 0 with f(k) = 0, if any.
std::optional<std::int64_t> first_nonnegative_integer_root(const IntPoly& f);

struct BruteForceResult {
  enum class Kind { FoundMembership, NoneUpTo, ThresholdViolation, ThresholdHoldsUpTo };
  Kind kind = Kind::NoneUpTo;
  std::int64_t n = 0;  // witness index, or the last scanned index
  std::string str() const;
};
// Scans indices 0..upTo inclusive.
BruteForceResult brute_force(const HGInstance& inst, std::int64_t upTo, const EngineConfig& cfg = {});

}  // namespace hgd
