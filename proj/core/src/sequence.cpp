#include "hgd/sequence.hpp"

#include "hgd/errors.hpp"
#include "hgd/factor.hpp"
#include "hgd/numeric.hpp"

#include <cmath>

namespace hgd {

namespace {

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t mod_of(const BigInt& x) { return mpz_fdiv_ui(x.get_mpz_t(), kPrime); }

long double log2_abs(const BigInt& x) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return static_cast<long double>(e) + std::log2(std::fabs(static_cast<long double>(m)));
}

constexpr long double kLogBand = 1e-6L;
constexpr mpfr_prec_t kApproxBits = 160;

}  // namespace

std::string to_string(Problem p) { return p == Problem::Membership ? "membership" : "threshold"; }

void HGInstance::validate() const {
  if (p.is_zero() || q.is_zero()) throw DomainError("p and q must be nonzero polynomials");
  if (auto k = first_nonnegative_integer_root(p))
    throw DomainError("p vanishes at the nonnegative integer " + std::to_string(*k) + "; the recurrence is undefined");
}

std::optional<std::int64_t> first_nonnegative_integer_root(const IntPoly& f) {
  if (f.degree() <= 0) return std::nullopt;
  std::optional<std::int64_t> best;
  for (const auto& r : integer_roots(f)) {
    if (r >= 0 && r.fits_slong_p()) {
      std::int64_t v = r.get_si();
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

struct SequenceScanner::Exact {
  BigInt num;  // u_n = num / den, den > 0, not reduced
  BigInt den;
};

SequenceScanner::SequenceScanner(IntPoly p, IntPoly q, BigRational u0)
    : p_(std::move(p)), q_(std::move(q)), u0_(std::move(u0)) {
  sign_ = u0_.sign();
  if (sign_ != 0) {
    log2_abs_ = log2_abs(u0_.num()) - log2_abs(u0_.den());
    residue_ = mod_of(u0_.num());
    residue_den_ = mod_of(u0_.den());
    residue_ok_ = residue_den_ != 0;
  }
}

struct SequenceScanner::Approx {
  Interval u;
};

SequenceScanner::~SequenceScanner() = default;
SequenceScanner::SequenceScanner(SequenceScanner&&) noexcept = default;
SequenceScanner& SequenceScanner::operator=(SequenceScanner&&) noexcept = default;

void SequenceScanner::ensure_exact() {
  if (exact_) return;
  auto e = std::make_unique<Exact>();
  e->num = u0_.num();
  e->den = u0_.den();
  for (std::int64_t k = 0; k < n_; ++k) {
    BigInt kk(static_cast<long>(k));
    e->num *= q_.eval(kk);
    e->den *= p_.eval(kk);
    if (e->num == 0) break;
  }
  if (e->den < 0) {
    e->den = -e->den;
    e->num = -e->num;
  }
  exact_ = std::move(e);
}

void SequenceScanner::ensure_approx() {
  if (approx_) return;
  auto a = std::make_unique<Approx>();
  a->u = Interval(u0_, kApproxBits);
  for (std::int64_t k = 0; k < n_; ++k) {
    BigInt kk(static_cast<long>(k));
    a->u = a->u * Interval(BigRational(q_.eval(kk)), kApproxBits) / Interval(BigRational(p_.eval(kk)), kApproxBits);
  }
  approx_ = std::move(a);
}

// sign(u_n - t), or sign(|u_n| - |t|) when absolute; 0 when the enclosure
// cannot tell.
int SequenceScanner::approx_compare(const BigRational& t, bool absolute) {
  ensure_approx();
  Interval u = absolute ? approx_->u.abs() : approx_->u;
  Interval d = u - Interval(absolute ? t.abs() : t, kApproxBits);
  return d.sign();
}

void SequenceScanner::advance() {
  BigInt k(static_cast<long>(n_));
  BigInt pv = p_.eval(k), qv = q_.eval(k);
  if (pv == 0) throw DomainError("p vanishes at n = " + std::to_string(n_));
  if (exact_) {
    if (sign_ != 0) {
      exact_->num *= qv;
      exact_->den *= pv;
      if (exact_->den < 0) {
        exact_->den = -exact_->den;
        exact_->num = -exact_->num;
      }
    }
  }
  if (approx_) {
    approx_->u = approx_->u * Interval(BigRational(qv), kApproxBits) / Interval(BigRational(pv), kApproxBits);
  }
  ++n_;
  if (sign_ == 0) return;
  if (qv == 0) {
    sign_ = 0;
    if (exact_) exact_->num = 0;
    return;
  }
  sign_ *= sgn(qv) * sgn(pv);
  log2_abs_ += log2_abs(qv) - log2_abs(pv);
  if (residue_ok_) {
    residue_ = mulmod(residue_, mod_of(qv));
    residue_den_ = mulmod(residue_den_, mod_of(pv));
    residue_ok_ = residue_den_ != 0;
  }
}

long double SequenceScanner::log_target(const BigRational& t) const {
  return log2_abs(t.num()) - log2_abs(t.den());
}

bool SequenceScanner::equals(const BigRational& t) {
  if (t.sign() != sign_) return false;
  if (sign_ == 0) return true;
  if (!exact_) {
    if (std::fabs(log2_abs_ - log_target(t)) > kLogBand) return false;
    if (residue_ok_) {
      if (mulmod(residue_, mod_of(t.den())) != mulmod(residue_den_, mod_of(t.num()))) return false;
    }
    ensure_exact();
  }
  return exact_->num * t.den() == exact_->den * t.num();
}

int SequenceScanner::compare(const BigRational& t) {
  int ts = t.sign();
  if (sign_ != ts) return sign_ > ts ? 1 : -1;
  if (sign_ == 0) return 0;
  if (!exact_) {
    long double diff = log2_abs_ - log_target(t);
    if (diff > kLogBand) return sign_;
    if (diff < -kLogBand) return -sign_;
    if (int c = approx_compare(t, false)) return c;
    ensure_exact();
  }
  return cmp(exact_->num * t.den(), exact_->den * t.num()) > 0 ? 1
         : (exact_->num * t.den() == exact_->den * t.num() ? 0 : -1);
}

int SequenceScanner::compare_abs(const BigRational& t) {
  if (t.sign() == 0) return sign_ == 0 ? 0 : 1;
  if (sign_ == 0) return -1;
  if (!exact_) {
    long double diff = log2_abs_ - log_target(t);
    if (diff > kLogBand) return 1;
    if (diff < -kLogBand) return -1;
    if (int c = approx_compare(t, true)) return c;
    ensure_exact();
  }
  BigInt a = abs(exact_->num * t.den()), b = abs(exact_->den * t.num());
  return a > b ? 1 : (a == b ? 0 : -1);
}

BigRational SequenceScanner::value() {
  if (sign_ == 0) return BigRational(0);
  ensure_exact();
  return BigRational(exact_->num, exact_->den);
}

BigRational term(const HGInstance& inst, std::int64_t n, const EngineConfig& cfg) {
  if (n < 0) throw DomainError("term index must be nonnegative");
  if (n > cfg.scan_cap) throw ResourceError("term index " + std::to_string(n) + " exceeds the scan cap");
  BigInt num = inst.u0.num(), den = inst.u0.den();
  for (std::int64_t k = 0; k < n && num != 0; ++k) {
    BigInt kk(static_cast<long>(k));
    BigInt pv = inst.p.eval(kk);
    if (pv == 0) throw DomainError("p vanishes at n = " + std::to_string(k));
    num *= inst.q.eval(kk);
    den *= pv;
  }
  return BigRational(num, den);
}

bool AsymptoticClass::diverges() const {
  switch (kind) {
    case Kind::DivergesToInfinity: return true;
    case Kind::ConvergesTo: return ratio_limit.abs() > BigRational(1);
    case Kind::RatioLimitOne: return A.sign() > 0;
    default: return false;
  }
}

bool AsymptoticClass::shrinks() const {
  switch (kind) {
    case Kind::ConvergesToZeroLimitRatio: return true;
    case Kind::ConvergesTo: return ratio_limit.abs() < BigRational(1);
    case Kind::RatioLimitOne: return A.sign() < 0;
    default: return false;
  }
}

std::string AsymptoticClass::str() const {
  switch (kind) {
    case Kind::DivergesToInfinity: return "DivergesToInfinity";
    case Kind::ConvergesToZeroLimitRatio: return "ConvergesToZeroLimitRatio";
    case Kind::ConvergesTo: return "ConvergesTo(" + ratio_limit.str() + ")";
    case Kind::RatioLimitOne: return "RatioLimitOne(A=" + A.str() + ")";
    case Kind::RatioLimitMinusOne: return "RatioLimitMinusOne";
  }
  return "?";
}

AsymptoticClass classify(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) throw DomainError("classify needs nonzero p and q");
  AsymptoticClass c;
  int m = p.degree(), mq = q.degree();
  if (mq > m) {
    c.kind = AsymptoticClass::Kind::DivergesToInfinity;
    return c;
  }
  if (mq < m) {
    c.kind = AsymptoticClass::Kind::ConvergesToZeroLimitRatio;
    return c;
  }
  BigRational ratio = BigRational(q.lead()) / BigRational(p.lead());
  if (ratio == BigRational(1)) {
    c.kind = AsymptoticClass::Kind::RatioLimitOne;
    c.A = m == 0 ? BigRational(0) : (BigRational(q.coeff(m - 1)) - BigRational(p.coeff(m - 1))) / BigRational(p.lead());
  } else if (ratio == BigRational(-1)) {
    c.kind = AsymptoticClass::Kind::RatioLimitMinusOne;
  } else {
    c.kind = AsymptoticClass::Kind::ConvergesTo;
    c.ratio_limit = ratio;
  }
  return c;
}

std::string to_string(SearchBound::Justification j) {
  switch (j) {
    case SearchBound::Justification::RatioExceedsTarget: return "RatioExceedsTarget";
    case SearchBound::Justification::ProductMonotoneBeyond: return "ProductMonotoneBeyond";
    case SearchBound::Justification::TailBelowTarget: return "TailBelowTarget";
  }
  return "?";
}

namespace {

std::int64_t ceil_to_index(const BigRational& x) {
  BigInt c = x.ceil();
  if (c < 0) c = 0;
  if (!c.fits_slong_p()) throw ResourceError("bound does not fit a machine integer");
  return c.get_si();
}

SearchBound scan_bound(const HGInstance& inst, const IntPoly& gap, int want, const EngineConfig& cfg,
                       SearchBound::Justification just) {
  if (inst.t.is_zero()) throw DomainError("search bounds need t != 0");
  std::int64_t K1 = ceil_to_index(std::max(cauchy_bound(gap), cauchy_bound(inst.p)));
  SearchBound b;
  b.ratio_from = K1;
  b.justification = just;
  SequenceScanner s(inst);
  while (s.index() < K1) {
    if (s.index() >= cfg.scan_cap) throw ResourceError("scan cap exceeded while computing a search bound");
    s.advance();
  }
  while (s.compare_abs(inst.t) != want) {
    if (s.index() >= cfg.scan_cap) throw ResourceError("scan cap exceeded while computing a search bound");
    if (s.is_zero() && want > 0) throw DomainError("sequence vanishes; no divergence bound exists");
    s.advance();
  }
  b.N = s.index();
  return b;
}

}  // namespace

SearchBound divergence_bound(const HGInstance& inst, const EngineConfig& cfg) {
  auto c = classify(inst.p, inst.q);
  if (!c.diverges()) throw DomainError("divergence_bound needs a divergent class, got " + c.str());
  IntPoly gap = inst.q * inst.q - inst.p * inst.p;
  if (gap.is_zero() || sgn(gap.lead()) <= 0) throw DomainError("internal error: |q| does not dominate |p|");
  return scan_bound(inst, gap, 1, cfg, SearchBound::Justification::RatioExceedsTarget);
}

SearchBound shrink_bound(const HGInstance& inst, const EngineConfig& cfg) {
  auto c = classify(inst.p, inst.q);
  if (!c.shrinks()) throw DomainError("shrink_bound needs a class converging to zero, got " + c.str());
  IntPoly gap = inst.p * inst.p - inst.q * inst.q;
  if (gap.is_zero() || sgn(gap.lead()) <= 0) throw DomainError("internal error: |p| does not dominate |q|");
  return scan_bound(inst, gap, -1, cfg, SearchBound::Justification::TailBelowTarget);
}

std::int64_t ratio_index(const IntPoly& p, const IntPoly& q, bool divergent) {
  IntPoly gap = divergent ? q * q - p * p : p * p - q * q;
  return ceil_to_index(std::max(cauchy_bound(gap), cauchy_bound(p)));
}

std::int64_t monotonicity_index(const IntPoly& p, const IntPoly& q) {
  BigRational K = std::max({cauchy_bound(p), cauchy_bound(q), cauchy_bound(q - p), cauchy_bound(q + p)});
  return ceil_to_index(K);
}

std::string BruteForceResult::str() const {
  switch (kind) {
    case Kind::FoundMembership: return "FoundMembership(" + std::to_string(n) + ")";
    case Kind::NoneUpTo: return "NoneUpTo(" + std::to_string(n) + ")";
    case Kind::ThresholdViolation: return "ThresholdViolation(" + std::to_string(n) + ")";
    case Kind::ThresholdHoldsUpTo: return "ThresholdHoldsUpTo(" + std::to_string(n) + ")";
  }
  return "?";
}

BruteForceResult brute_force(const HGInstance& inst, std::int64_t upTo, const EngineConfig& cfg) {
  if (upTo > cfg.scan_cap) throw ResourceError("brute-force range exceeds the scan cap");
  SequenceScanner s(inst);
  BruteForceResult r;
  for (;;) {
    if (inst.problem == Problem::Membership) {
      if (s.equals(inst.t)) return {BruteForceResult::Kind::FoundMembership, s.index()};
    } else if (s.compare(inst.t) < 0) {
      return {BruteForceResult::Kind::ThresholdViolation, s.index()};
    }
    if (s.index() >= upTo) break;
    if (s.is_zero()) break;  // every later term is zero as well
    s.advance();
  }
  r.kind = inst.problem == Problem::Membership ? BruteForceResult::Kind::NoneUpTo
                                               : BruteForceResult::Kind::ThresholdHoldsUpTo;
  r.n = upTo;
  return r;
}

}  // namespace hgd
