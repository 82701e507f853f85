#pragma once

#include "hgd/config.hpp"
#include "hgd/gammacanon.hpp"
#include "hgd/verdict.hpp"

#include <functional>

namespace hgd {

struct EqualityDecision {
  bool equal = false;
  Rationale rationale = Rationale::RationalIdentity;
};

// Symbolic test of C == t (t != 0); performs no numerics.
EqualityDecision decide_equal(const CanonicalConstant& C, const BigRational& t);

// Sign of C - t by interval refinement from 64 bits, doubling up to the cap.
// Requires a NotEqual decision; ResourceError at the cap.
EqualityVerdict compare(const CanonicalConstant& C, const BigRational& t, const EqualityDecision& proof,
                        const EngineConfig& cfg = {});
// Same loop for an arbitrary expression known to differ from t.
EqualityVerdict compare_expr(const ConstExpr& value, const BigRational& t, const EngineConfig& cfg = {});

// Decision pipeline shared by both procedures.  The comparator is consulted
// only in the harmonious branch, and only when prefix scans and sign
// arguments cannot settle the question.
using LimitComparator = std::function<LimitComparison(const BigRational& t)>;
Verdict decide_with(const HGInstance& inst, const LimitComparator& limit, const EngineConfig& cfg,
                    std::optional<CanonicalConstant> constant = std::nullopt);

// Unconditional procedure (roots over Q or one imaginary quadratic field).
Verdict decide_membership(const HGInstance& inst, const EngineConfig& cfg = {});
Verdict decide_threshold(const HGInstance& inst, const EngineConfig& cfg = {});
Verdict decide_unconditional(const HGInstance& inst, const EngineConfig& cfg = {});

}  // namespace hgd
