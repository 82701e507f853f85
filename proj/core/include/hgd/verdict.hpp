#pragma once

#include "hgd/gammacanon.hpp"
#include "hgd/sequence.hpp"

#include <optional>
#include <string>

namespace hgd {

enum class Conditionality { Unconditional, ConditionalOnSchanuel };
std::string to_string(Conditionality c);

enum class Relation { Equal, Less, Greater };  // limit vs target
enum class Rationale { RationalIdentity, PiPowerObstruction, TranscendenceObstruction, IntervalSeparation, SchanuelIdentity };
std::string to_string(Relation r);
std::string to_string(Rationale r);

struct EqualityVerdict {
  Relation relation = Relation::Equal;
  Rationale rationale = Rationale::RationalIdentity;  // why equal / why not equal
  long precision_bits = 0;                            // separating precision for Less/Greater
  std::string str() const;
};

// How the limit tau compares with t, as seen by one of the two procedures.
struct LimitComparison {
  EqualityVerdict evidence;
  bool conditional = false;  // tau != t rests on Schanuel's conjecture
  std::optional<CanonicalConstant> constant;
};

struct Verdict {
  enum class Outcome { Member, NotMember, Holds, Fails };
  enum class Route { AllZero, ConstantSequence, ZeroTail, Divergent, Shrinking, Harmonious };

  Problem problem = Problem::Membership;
  Outcome outcome = Outcome::NotMember;
  std::optional<std::int64_t> witness;  // Member(n) / Fails(n)
  Conditionality conditionality = Conditionality::Unconditional;
  AsymptoticClass cls;
  Route route = Route::Harmonious;

  std::int64_t prefix_end = 0;   // indices 0..prefix_end were scanned exactly
  std::int64_t scan_end = 0;     // last index examined by any scan
  std::int64_t sign_from = 0;    // r(n) has the sign of lead(q)/lead(p) for n >= sign_from
  int tail_sign = 0;             // sign of u_n for n >= sign_from (0 when alternating)
  std::int64_t K0 = -1;          // harmonious: monotone beyond K0
  int tail_direction = 0;        // harmonious: sign of u_{n+1} - u_n beyond K0
  std::optional<std::int64_t> zero_from;  // u_n = 0 for n >= zero_from
  std::optional<SearchBound> bound;
  std::optional<CanonicalConstant> constant;
  std::optional<LimitComparison> limit;  // set when the limit was consulted

  bool positive() const { return outcome == Outcome::Member || outcome == Outcome::Holds; }
  std::string str() const;
};

std::string to_string(Verdict::Outcome o);
std::string to_string(Verdict::Route r);

}  // namespace hgd
