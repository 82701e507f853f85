#include "hgd/equality.hpp"

#include "hgd/errors.hpp"

namespace hgd {

std::string to_string(Conditionality c) {
  return c == Conditionality::Unconditional ? "Unconditional" : "ConditionalOnSchanuel";
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "Equal";
    case Relation::Less: return "Less";
    case Relation::Greater: return "Greater";
  }
  return "?";
}

std::string to_string(Rationale r) {
  switch (r) {
    case Rationale::RationalIdentity: return "RationalIdentity";
    case Rationale::PiPowerObstruction: return "PiPowerObstruction";
    case Rationale::TranscendenceObstruction: return "TranscendenceObstruction";
    case Rationale::IntervalSeparation: return "IntervalSeparation";
    case Rationale::SchanuelIdentity: return "SchanuelIdentity";
  }
  return "?";
}

std::string EqualityVerdict::str() const {
  std::string s = to_string(relation) + " (" + to_string(rationale);
  if (rationale == Rationale::IntervalSeparation) s += ", " + std::to_string(precision_bits) + " bits";
  return s + ")";
}

std::string to_string(Verdict::Outcome o) {
  switch (o) {
    case Verdict::Outcome::Member: return "Member";
    case Verdict::Outcome::NotMember: return "NotMember";
    case Verdict::Outcome::Holds: return "Holds";
    case Verdict::Outcome::Fails: return "Fails";
  }
  return "?";
}

std::string to_string(Verdict::Route r) {
  switch (r) {
    case Verdict::Route::AllZero: return "AllZero";
    case Verdict::Route::ConstantSequence: return "ConstantSequence";
    case Verdict::Route::ZeroTail: return "ZeroTail";
    case Verdict::Route::Divergent: return "Divergent";
    case Verdict::Route::Shrinking: return "Shrinking";
    case Verdict::Route::Harmonious: return "Harmonious";
  }
  return "?";
}

std::string Verdict::str() const {
  std::string s = to_string(outcome);
  if (witness) s += "(" + std::to_string(*witness) + ")";
  return s + " [" + to_string(conditionality) + "]";
}

namespace {

bool proportional(const IntPoly& f, const IntPoly& g) {
  return f.scaled(g.lead()) == g.scaled(f.lead());
}

}  // namespace

EqualityDecision decide_equal(const CanonicalConstant& C, const BigRational& t) {
  if (t.is_zero()) throw DomainError("decide_equal needs a nonzero target");
  if (C.theta.is_zero() || C.f.is_zero() || C.g.is_zero() || C.ell < 0)
    throw DomainError("malformed canonical constant");
  bool fg_prop = proportional(C.f, C.g);
  if (C.ell == 0) {
    // theta f - t g == 0 coefficientwise, both coordinates over Q(sqrt m)
    int n = std::max(C.f.degree(), C.g.degree());
    bool zero = true;
    for (int i = 0; i <= n && zero; ++i) {
      BigRational fi(C.f.coeff(i)), gi(C.g.coeff(i));
      zero = C.theta.a() * fi - t * gi == BigRational(0) && (C.theta.b() * fi).is_zero();
    }
    if (zero) return {true, Rationale::RationalIdentity};
    return {false, fg_prop ? Rationale::RationalIdentity : Rationale::TranscendenceObstruction};
  }
  return {false, fg_prop ? Rationale::PiPowerObstruction : Rationale::TranscendenceObstruction};
}

EqualityVerdict compare_expr(const ConstExpr& value, const BigRational& t, const EngineConfig& cfg) {
  ConstExpr diff = value - ConstExpr::rational(t);
  for (long bits = 64;; bits *= 2) {
    if (bits > cfg.precision_cap_bits)
      throw ResourceError("precision cap of " + std::to_string(cfg.precision_cap_bits) +
                          " bits reached without separating the limit from t");
    try {
      Interval I = eval_enclosure(diff, bits, cfg.precision_cap_bits);
      if (int s = I.sign()) {
        EqualityVerdict v;
        v.relation = s > 0 ? Relation::Greater : Relation::Less;
        v.rationale = Rationale::IntervalSeparation;
        v.precision_bits = bits;
        return v;
      }
    } catch (const IntervalIndeterminate&) {
    }
  }
}

EqualityVerdict compare(const CanonicalConstant& C, const BigRational& t, const EqualityDecision& proof,
                        const EngineConfig& cfg) {
  if (proof.equal) throw DomainError("compare needs a NotEqual decision");
  return compare_expr(C.expr(), t, cfg);
}

namespace {

class Pipeline {
 public:
  Pipeline(const HGInstance& inst, const LimitComparator& limit, const EngineConfig& cfg)
      : inst_(inst), limit_(limit), cfg_(cfg), s_(inst), mem_(inst.problem == Problem::Membership) {
    v_.problem = inst.problem;
  }

  Verdict run();

 private:
  // Scans indices up to `last` inclusive; true once the question is settled.
  bool scan_to(std::int64_t last);
  void advance();
  bool settle_negative() {
    v_.outcome = mem_ ? Verdict::Outcome::NotMember : Verdict::Outcome::Holds;
    return true;
  }
  bool alternating() const { return sgn(inst_.p.lead()) * sgn(inst_.q.lead()) < 0; }
  bool opposite_sign_tail();
  bool bounded_scan(bool divergent);
  void harmonious();
  void divergent();
  void shrinking();

  const HGInstance& inst_;
  const LimitComparator& limit_;
  const EngineConfig& cfg_;
  SequenceScanner s_;
  bool mem_;
  Verdict v_;
};

void Pipeline::advance() {
  if (s_.index() >= cfg_.scan_cap)
    throw ResourceError("scan cap of " + std::to_string(cfg_.scan_cap) + " terms exceeded");
  s_.advance();
}

bool Pipeline::scan_to(std::int64_t last) {
  for (;;) {
    v_.scan_end = std::max(v_.scan_end, s_.index());
    bool hit = mem_ ? s_.equals(inst_.t) : s_.compare(inst_.t) < 0;
    if (hit) {
      v_.outcome = mem_ ? Verdict::Outcome::Member : Verdict::Outcome::Fails;
      v_.witness = s_.index();
      return true;
    }
    if (s_.index() >= last) return false;
    advance();
  }
}

// With a one-signed tail from sign_from on, a target of the other sign can
// only be met (or undercut) in the prefix.
bool Pipeline::opposite_sign_tail() {
  const BigRational& t = inst_.t;
  if (t.is_zero() || alternating()) return false;
  std::int64_t last = std::max<std::int64_t>(v_.sign_from, 0);
  if (s_.index() > last) return false;
  SequenceScanner probe(inst_);
  while (probe.index() < last) probe.advance();
  int tail = probe.sign();
  if (tail == t.sign() || (!mem_ && tail < 0)) return false;
  v_.prefix_end = last;
  if (scan_to(last)) return true;
  v_.tail_sign = tail;
  return settle_negative();
}

// Scans for a hit while searching for the first N past the ratio index with
// |u_N| beyond |t| in the direction the tail moves.
bool Pipeline::bounded_scan(bool divergent) {
  SearchBound b;
  b.ratio_from = ratio_index(inst_.p, inst_.q, divergent);
  b.justification =
      divergent ? SearchBound::Justification::RatioExceedsTarget : SearchBound::Justification::TailBelowTarget;
  const int want = divergent ? 1 : -1;
  for (;;) {
    if (scan_to(s_.index())) return true;
    if (s_.index() >= b.ratio_from && s_.compare_abs(inst_.t) == want) break;
    advance();
  }
  b.N = s_.index();
  v_.bound = b;
  return false;
}

void Pipeline::divergent() {
  v_.route = Verdict::Route::Divergent;
  const BigRational& t = inst_.t;
  if (mem_ && t.is_zero()) {
    v_.prefix_end = 0;
    scan_to(0);
    settle_negative();
    return;
  }
  if (opposite_sign_tail()) return;
  std::int64_t last = v_.sign_from;
  if (!t.is_zero()) {
    if (bounded_scan(true)) return;
    last = mem_ ? v_.bound->N - 1 : std::max(v_.bound->N, v_.sign_from);
  }
  last = std::max<std::int64_t>(last, 0);
  v_.prefix_end = last;
  if (scan_to(last)) return;
  if (!mem_) {
    if (alternating() && scan_to(last + 1)) return;
    if (alternating()) throw DomainError("internal error: alternating divergent tail never fell below t");
    v_.tail_sign = s_.sign();
  }
  settle_negative();
}

void Pipeline::shrinking() {
  v_.route = Verdict::Route::Shrinking;
  const BigRational& t = inst_.t;
  if (mem_ && t.is_zero()) {
    v_.prefix_end = 0;
    scan_to(0);
    settle_negative();
    return;
  }
  if (opposite_sign_tail()) return;
  std::int64_t last = v_.sign_from;
  if (!t.is_zero()) {
    if (bounded_scan(false)) return;
    last = v_.bound->N - (mem_ || t.sign() < 0 ? 1 : 0);
  }
  last = std::max<std::int64_t>(last, 0);
  v_.prefix_end = last;
  if (scan_to(last)) return;
  if (!mem_ && t.sign() > 0) throw DomainError("internal error: shrinking sequence never fell below t");
  if (!mem_ && t.is_zero()) {
    if (alternating() && scan_to(last + 1)) return;
    if (alternating()) throw DomainError("internal error: alternating tail has no negative term");
  }
  if (!mem_) v_.tail_sign = alternating() ? 0 : s_.sign();
  settle_negative();
}

void Pipeline::harmonious() {
  v_.route = Verdict::Route::Harmonious;
  const BigRational& t = inst_.t;
  if (mem_ && t.is_zero()) {
    v_.prefix_end = 0;
    scan_to(0);
    settle_negative();
    return;
  }
  const std::int64_t K0 = v_.K0;
  v_.prefix_end = K0;
  if (scan_to(K0)) return;
  const int sigma = s_.sign();
  const int s = sgn((inst_.q - inst_.p).lead());
  const int delta = sigma * s;
  v_.tail_sign = sigma;
  v_.tail_direction = delta;

  auto consult = [&]() -> const LimitComparison& {
    v_.limit = limit_(t);
    if (v_.limit->constant) v_.constant = v_.limit->constant;
    return *v_.limit;
  };
  auto inherit = [&](const LimitComparison& lc) {
    if (lc.conditional && lc.evidence.relation != Relation::Equal)
      v_.conditionality = Conditionality::ConditionalOnSchanuel;
  };
  // Scan until the tail crosses t; the crossing itself decides.
  auto chase = [&]() {
    for (;;) {
      advance();
      v_.scan_end = s_.index();
      if (mem_) {
        int c = s_.compare(t);
        if (c == 0) {
          v_.outcome = Verdict::Outcome::Member;
          v_.witness = s_.index();
          return;
        }
        if (c == delta) {
          settle_negative();
          return;
        }
      } else if (s_.compare(t) < 0) {
        v_.outcome = Verdict::Outcome::Fails;
        v_.witness = s_.index();
        return;
      }
    }
  };

  if (mem_) {
    if (t.sign() != sigma || delta * s_.compare(t) >= 0) {
      settle_negative();
      return;
    }
    const LimitComparison& lc = consult();
    if (lc.evidence.relation == Relation::Equal) {
      settle_negative();
      return;
    }
    int side = lc.evidence.relation == Relation::Greater ? 1 : -1;  // sign(tau - t)
    if (side != delta) {
      inherit(lc);
      settle_negative();
      return;
    }
    chase();
    return;
  }
  if (delta > 0 || (sigma > 0 && t.sign() <= 0)) {
    settle_negative();
    return;
  }
  const LimitComparison& lc = consult();
  if (lc.evidence.relation != Relation::Less) {
    inherit(lc);
    settle_negative();
    return;
  }
  chase();
}

Verdict Pipeline::run() {
  inst_.validate();
  v_.cls = classify(inst_.p, inst_.q);
  if (inst_.u0.is_zero()) {
    v_.route = Verdict::Route::AllZero;
    v_.zero_from = 0;
    if (!scan_to(0)) settle_negative();
    return v_;
  }
  if (auto k = first_nonnegative_integer_root(inst_.q)) {
    v_.route = Verdict::Route::ZeroTail;
    v_.zero_from = *k + 1;
    v_.prefix_end = *k + 1;
    if (!scan_to(*k + 1)) settle_negative();
    return v_;
  }
  if (inst_.q == inst_.p) {
    v_.route = Verdict::Route::ConstantSequence;
    if (!scan_to(0)) settle_negative();
    return v_;
  }
  v_.sign_from = monotonicity_index(inst_.p, inst_.q);
  if (v_.cls.harmonious()) {
    if (!inst_.monic()) throw UnsupportedError("the harmonious case needs monic p and q");
    v_.K0 = v_.sign_from;
    harmonious();
  } else if (v_.cls.diverges()) {
    divergent();
  } else if (v_.cls.shrinks()) {
    shrinking();
  } else {
    throw UnsupportedError("asymptotic class " + v_.cls.str() + " is outside the monic deciders");
  }
  return v_;
}

}  // namespace

Verdict decide_with(const HGInstance& inst, const LimitComparator& limit, const EngineConfig& cfg,
                    std::optional<CanonicalConstant> constant) {
  Pipeline pl(inst, limit, cfg);
  Verdict v = pl.run();
  if (constant && !v.constant) v.constant = std::move(constant);
  return v;
}

Verdict decide_unconditional(const HGInstance& inst, const EngineConfig& cfg) {
  std::optional<CanonicalConstant> C;
  LimitComparator limit = [&](const BigRational& t) {
    if (!C) C = limit_constant(inst, cfg);
    LimitComparison lc;
    lc.constant = C;
    if (t.is_zero()) {
      lc.evidence = compare_expr(C->expr(), t, cfg);
      return lc;
    }
    EqualityDecision d = decide_equal(*C, t);
    if (d.equal) {
      lc.evidence.relation = Relation::Equal;
      lc.evidence.rationale = d.rationale;
      return lc;
    }
    lc.evidence = compare(*C, t, d, cfg);
    return lc;
  };
  return decide_with(inst, limit, cfg);
}

Verdict decide_membership(const HGInstance& inst, const EngineConfig& cfg) {
  HGInstance copy = inst;
  copy.problem = Problem::Membership;
  return decide_unconditional(copy, cfg);
}

Verdict decide_threshold(const HGInstance& inst, const EngineConfig& cfg) {
  HGInstance copy = inst;
  copy.problem = Problem::Threshold;
  return decide_unconditional(copy, cfg);
}

}  // namespace hgd
