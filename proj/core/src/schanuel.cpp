#include "hgd/schanuel.hpp"

#include "hgd/errors.hpp"
#include "hgd/roots.hpp"

#include <algorithm>
#include <mutex>

namespace hgd {

PairedRoots pair_roots(const Factorization& fac, const MatchingCertificate& cert) {
  std::string bad = validate_matching(fac, cert);
  if (!bad.empty()) throw DomainError("invalid matching certificate: " + bad);
  PairedRoots out;
  out.tower = cert.tower;
  for (const auto& pr : cert.pairs) {
    if (!pr.w) throw UnsupportedError("the matched roots have no exact tower representation");
    out.pairs.push_back({pr.rho(), *pr.w});
  }
  for (const auto& fi : fac.factors) {
    if (fi.degree() != 1) continue;
    if (!fi.linear_root.is_integer()) throw DomainError("monic polynomial with a non-integral rational root");
    out.rational_roots.emplace_back(fi.linear_root.num(), fi.multiplicity);
  }
  return out;
}

namespace {

using Vec = std::vector<BigRational>;

// Incremental row echelon form remembering how each row arose from the
// inserted vectors.
class Span {
 public:
  explicit Span(std::size_t dim) : dim_(dim) {}

  // Coefficients over the inserted vectors when v lies in the span.
  std::optional<Vec> express(const Vec& v) const {
    auto [rest, comb] = reduce(v);
    if (!is_zero(rest)) return std::nullopt;
    return comb;
  }

  // Inserts v when independent; returns whether it was.
  bool insert(const Vec& v) {
    auto [rest, comb] = reduce(v);
    if (is_zero(rest)) return false;
    std::size_t piv = 0;
    while (rest[piv].is_zero()) ++piv;
    for (auto& c : comb) c = -c;
    comb.push_back(1);
    for (auto& t : track_) t.push_back(0);
    rows_.push_back(std::move(rest));
    track_.push_back(std::move(comb));
    pivots_.push_back(piv);
    ++count_;
    return true;
  }

  std::size_t size() const { return count_; }

 private:
  static bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const BigRational& x) { return x.is_zero(); });
  }

  // v = rest + sum comb_j * inserted_j
  std::pair<Vec, Vec> reduce(Vec v) const {
    if (v.size() != dim_) throw DomainError("coordinate vector of the wrong dimension");
    Vec comb(count_, 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const BigRational& x = v[pivots_[r]];
      if (x.is_zero()) continue;
      BigRational f = x / rows_[r][pivots_[r]];
      for (std::size_t k = 0; k < dim_; ++k)
        if (!rows_[r][k].is_zero()) v[k] -= f * rows_[r][k];
      for (std::size_t k = 0; k < count_; ++k)
        if (!track_[r][k].is_zero()) comb[k] += f * track_[r][k];
    }
    return {std::move(v), std::move(comb)};
  }

  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<Vec> rows_;
  std::vector<Vec> track_;  // rows_[r] = sum track_[r][k] * inserted_k
  std::vector<std::size_t> pivots_;
};

TowerPtr default_tower() {
  TowerRequest req;
  req.need_i = true;
  return build_tower(req);
}

}  // namespace

TowerElem BasisResult::reconstruct(std::size_t k) const {
  TowerElem x = TowerElem::rational(tower, real_part.at(k)) + imaginary_unit(tower) * imag_part.at(k);
  for (std::size_t j = 0; j < S.size(); ++j) x = x + S[j] * BigRational(coeffs.at(k)[j]);
  return x;
}

BasisResult build_basis(const std::vector<TowerElem>& ws, TowerPtr tower) {
  BasisResult out;
  out.tower = !ws.empty() ? ws.front().tower() : (tower ? tower : default_tower());
  const TowerPtr& T = out.tower;
  for (const auto& w : ws)
    if (!w.tower()->same_as(*T)) throw UnsupportedError("basis elements live in different towers");
  TowerElem one = TowerElem::one(T);
  TowerElem i = imaginary_unit(T);
  Span span(static_cast<std::size_t>(T->degree()));
  span.insert(one.coords());
  span.insert(i.coords());
  for (std::size_t k = 0; k < ws.size(); ++k)
    if (span.insert(ws[k].coords())) out.chosen.push_back(k);
  const std::size_t m = out.chosen.size();
  std::vector<Vec> y(ws.size());
  for (std::size_t k = 0; k < ws.size(); ++k) {
    auto c = span.express(ws[k].coords());
    if (!c) throw DomainError("internal error: basis element outside its own span");
    out.real_part.push_back((*c)[0]);
    out.imag_part.push_back((*c)[1]);
    y[k].assign(c->begin() + 2, c->end());
  }
  out.normalizers.assign(m, 1);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < ws.size(); ++k) out.normalizers[j] = lcm(out.normalizers[j], y[k][j].den());
  for (std::size_t j = 0; j < m; ++j)
    out.S.push_back(ws[out.chosen[j]] * BigRational(BigInt(1), out.normalizers[j]));
  out.coeffs.assign(ws.size(), std::vector<BigInt>(m));
  for (std::size_t k = 0; k < ws.size(); ++k)
    for (std::size_t j = 0; j < m; ++j) {
      BigRational c = y[k][j] * BigRational(out.normalizers[j]);
      if (!c.is_integer()) throw DomainError("internal error: normalized coefficient is not integral");
      out.coeffs[k][j] = c.num();
    }
  for (std::size_t k = 0; k < ws.size(); ++k)
    if (!(out.reconstruct(k) == ws[k])) throw DomainError("internal error: basis reconstruction failed");
  return out;
}

std::vector<std::string> SymbolicIdentity::names() const {
  std::vector<std::string> n{"Pi", "E"};
  for (std::size_t j = 0; j < s.size(); ++j) n.push_back("Y" + std::to_string(j + 1));
  return n;
}

std::vector<bool> SymbolicIdentity::involved() const {
  std::vector<bool> inv(static_cast<std::size_t>(poly.nvars()), false);
  const auto& terms = poly.terms();
  if (terms.empty()) return inv;
  const auto& first = terms.begin()->first;
  for (const auto& [e, c] : terms)
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != first[v]) inv[v] = true;
  return inv;
}

std::string SymbolicIdentity::str() const {
  std::string out = to_string(poly.normalized(), names()) + " = 0";
  if (L != 1) out += "  where E = e^(pi/" + std::to_string(L) + ")";
  for (std::size_t j = 0; j < s.size(); ++j)
    out += (j == 0 && L == 1 ? "  where " : ", ") + std::string("Y") + std::to_string(j + 1) + " = e^(i*pi*(" +
           s[j].str() + "))";
  return out;
}

ComplexInterval SymbolicIdentity::evaluate(const TowerMPoly& f, mpfr_prec_t prec) const {
  Interval pi = Interval::pi(prec);
  std::vector<ComplexInterval> val;
  val.push_back(ComplexInterval::real(pi));
  val.push_back(ComplexInterval::real((pi / Interval(BigRational(L), prec)).exp()));
  for (const auto& sj : s) {
    ComplexInterval z = sj.embed(prec);
    val.push_back(ComplexInterval(-(z.im * pi), z.re * pi).exp());
  }
  ComplexInterval acc(prec);
  for (const auto& [e, c] : f.terms()) {
    ComplexInterval term = c.embed(prec);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0) term = term * val[v].pow(e[v]);
    acc = acc + term;
  }
  note_interval_evaluation();
  return acc;
}

SymbolicIdentity identity_over_q(const RatMPoly& poly, const BigRational& t, long L) {
  if (poly.nvars() > 2) throw DomainError("identity_over_q takes polynomials in Pi and E only");
  SymbolicIdentity id;
  id.tower = Tower::rational();
  id.L = L;
  id.t = t;
  auto lift = [&](const RatMPoly& f) {
    TowerMPoly g(2);
    for (const auto& [e, c] : f.terms()) {
      std::vector<int> e2(2, 0);
      for (std::size_t v = 0; v < e.size(); ++v) e2[v] = e[v];
      g.add_term(e2, TowerElem::rational(id.tower, c));
    }
    return g;
  };
  id.poly = lift(poly);
  id.numerator = id.poly;
  id.denominator = TowerMPoly(2);
  id.denominator.add_term({0, 0}, TowerElem::one(id.tower));
  return id;
}

SymbolicIdentity build_identity(const IdentityInput& in, const BasisResult& basis) {
  const TowerPtr& T = basis.tower;
  const std::size_t m = basis.S.size();
  const std::size_t np = in.p_pairs.size(), nq = in.q_pairs.size();
  if (basis.real_part.size() != np + nq) throw DomainError("basis does not cover the pairs");
  const int nv = static_cast<int>(2 + m);
  SymbolicIdentity id;
  id.tower = T;
  id.s = basis.S;
  id.t = in.t;
  BigInt L = 1;
  for (const auto& b : basis.imag_part) L = lcm(L, b.den());
  if (!L.fits_slong_p()) throw ResourceError("exponential scale does not fit a machine integer");
  id.L = L.get_si();

  const TowerElem one = TowerElem::one(T);
  const TowerElem i = imaginary_unit(T);
  auto constant = [&](const TowerElem& c) {
    TowerMPoly f(nv);
    f.add_term(std::vector<int>(nv, 0), c);
    return f;
  };
  // Gamma(n + w) Gamma(n - w) = A * Z / (Z^2 - sgn) with Z = e^{i pi w}.
  auto pair_factor = [&](const RootPair& pr, std::size_t k, TowerMPoly& A, TowerMPoly& B) {
    const BigRational n = -pr.rho;
    const TowerElem& w = pr.w;
    if (!(basis.reconstruct(k) == w)) throw DomainError("internal error: pair not expressed by the basis");
    const TowerElem w2 = w * w;
    TowerElem c = one;
    bool half = !n.is_integer();
    if (half && !(n * BigRational(2)).is_integer()) throw DomainError("pair centre is not a half-integer");
    BigInt lo = half ? (n - BigRational(1, 2)).num() : n.num();  // n = lo or lo + 1/2
    if (!lo.fits_slong_p()) throw ResourceError("pair centre too large");
    long nn = lo.get_si();
    auto factor_at = [&](long j) {
      BigRational x = half ? BigRational(j) + BigRational(1, 2) : BigRational(j);
      return TowerElem::rational(T, x * x) - w2;
    };
    if (!half) {
      if (nn >= 1)
        for (long j = 1; j < nn; ++j) c = c * factor_at(j);
      else
        for (long j = nn; j <= 0; ++j) c = c / factor_at(j);
      c = c * i * w * BigRational(2);
    } else {
      if (nn >= 0)
        for (long j = 0; j < nn; ++j) c = c * factor_at(j);
      else
        for (long j = nn; j < 0; ++j) c = c / factor_at(j);
      c = c * BigRational(2);
    }
    std::vector<int> e(nv, 0);
    BigRational eb = -basis.imag_part[k] * BigRational(L);
    if (!eb.is_integer() || !eb.num().fits_sint_p()) throw ResourceError("exponent out of range");
    e[1] = static_cast<int>(eb.num().get_si());
    for (std::size_t j = 0; j < m; ++j) {
      if (!basis.coeffs[k][j].fits_sint_p()) throw ResourceError("exponent out of range");
      e[2 + j] = static_cast<int>(basis.coeffs[k][j].get_si());
    }
    TowerElem zeta = one;
    const BigRational& a = basis.real_part[k];
    if (!a.is_zero()) {
      BigInt den = a.den() * 2;
      BigInt num = a.num() % den;
      if (num < 0) num += den;
      if (!den.fits_slong_p()) throw UnsupportedError("root of unity of huge order");
      zeta = root_of_unity_in(T, den.get_si(), num.get_si());
    }
    TowerMPoly a_term(nv);
    a_term.add_term(e, c * zeta);
    std::vector<int> e2 = e;
    for (auto& x : e2) x *= 2;
    TowerMPoly b_term(nv);
    b_term.add_term(e2, zeta * zeta);
    b_term.add_term(std::vector<int>(nv, 0), half ? one : -one);
    A = A * a_term;
    B = B * b_term;
  };

  TowerMPoly Ap = constant(one), Bp = constant(one), Aq = constant(one), Bq = constant(one);
  for (std::size_t k = 0; k < np; ++k) pair_factor(in.p_pairs[k], k, Ap, Bp);
  for (std::size_t k = 0; k < nq; ++k) pair_factor(in.q_pairs[k], np + k, Aq, Bq);
  std::vector<int> pi_pow(nv, 0);
  pi_pow[0] = static_cast<int>(np) - static_cast<int>(nq);
  TowerMPoly lead(nv);
  lead.add_term(pi_pow, TowerElem::rational(T, in.prefactor));
  id.numerator = lead * Ap * Bq;
  id.denominator = Aq * Bp;
  id.poly = id.numerator - id.denominator * constant(TowerElem::rational(T, in.t));
  return id;
}

std::string IdentityDecision::str() const {
  std::string s = outcome == Outcome::HoldsUnconditionally ? "HoldsUnconditionally" : "FailsUnderSC";
  switch (fast_path) {
    case FastPath::None: break;
    case FastPath::Constant: s += " (nonzero constant)"; break;
    case FastPath::PiAlone: s += " (PiPowerObstruction: polynomial in pi alone)"; break;
    case FastPath::Nesterenko: s += " (pi and one exponential: algebraically independent)"; break;
  }
  return s;
}

IdentityDecision decide_identity(const SymbolicIdentity& id, const IdentityOptions& opt) {
  IdentityDecision d;
  if (id.poly.is_zero()) {
    d.outcome = IdentityDecision::Outcome::HoldsUnconditionally;
    return d;
  }
  d.outcome = IdentityDecision::Outcome::FailsUnderSC;
  auto inv = id.involved();
  std::vector<std::size_t> used;
  for (std::size_t v = 0; v < inv.size(); ++v)
    if (inv[v]) used.push_back(v);
  auto only = [&](std::initializer_list<std::size_t> allowed) {
    return std::all_of(used.begin(), used.end(), [&](std::size_t v) {
      return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
    });
  };
  if (used.empty()) {
    d.fast_path = IdentityDecision::FastPath::Constant;
  } else if (only({0})) {
    d.fast_path = IdentityDecision::FastPath::PiAlone;
  } else if (opt.nesterenko_degeneration) {
    if (only({0, 1})) {
      d.fast_path = IdentityDecision::FastPath::Nesterenko;
    } else {
      std::vector<std::size_t> ys;
      for (auto v : used)
        if (v >= 2) ys.push_back(v);
      if (ys.size() == 1 && only({0, ys[0]})) {
        const TowerElem& s = id.s[ys[0] - 2];
        TowerElem s2 = s * s;
        if (s2.is_rational() && s2.rational_value().sign() < 0) d.fast_path = IdentityDecision::FastPath::Nesterenko;
      }
    }
  }
  return d;
}

namespace {
std::mutex g_stress_mutex;
std::vector<std::string> g_stress;
}  // namespace

std::vector<std::string> schanuel_stress_cases() {
  std::lock_guard<std::mutex> lock(g_stress_mutex);
  return g_stress;
}

IdentityEnclosure enclose_identity(const SymbolicIdentity& id, const EngineConfig& cfg) {
  IdentityEnclosure out;
  if (id.poly.is_zero()) return out;
  for (long bits = 256; bits <= cfg.precision_cap_bits; bits *= 2) {
    out.bits = bits;
    ComplexInterval v = id.evaluate(id.poly, bits + 32);
    if (v.excludes_zero()) {
      out.separated = true;
      return out;
    }
  }
  std::lock_guard<std::mutex> lock(g_stress_mutex);
  g_stress.push_back("Schanuel stress case: " + id.str() + " stays near zero at " +
                     std::to_string(cfg.precision_cap_bits) + " bits");
  return out;
}

EqualityVerdict compare_identity(const SymbolicIdentity& id, const EngineConfig& cfg) {
  if (id.poly.is_zero()) throw DomainError("compare_identity needs a non-cancelling identity");
  for (long bits = 64; bits <= cfg.precision_cap_bits; bits *= 2) {
    ComplexInterval P = id.evaluate(id.poly, bits + 32);
    ComplexInterval D = id.evaluate(id.denominator, bits + 32);
    if (!D.excludes_zero()) continue;
    ComplexInterval z = P / D;
    if (int s = z.re.sign()) {
      EqualityVerdict v;
      v.relation = s > 0 ? Relation::Greater : Relation::Less;
      v.rationale = Rationale::IntervalSeparation;
      v.precision_bits = bits;
      return v;
    }
  }
  throw ResourceError("precision cap of " + std::to_string(cfg.precision_cap_bits) +
                      " bits reached without separating the limit from t");
}

namespace {

BigRational gamma_of_positive_integer(const BigInt& n) {
  if (n < 1) throw DomainError("internal error: Gamma at a nonpositive integer");
  if (!n.fits_ulong_p() || n > 100000) throw ResourceError("factorial too large");
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n.get_ui() - 1);
  return BigRational(f);
}

struct Prepared {
  Assumption1Result ap, aq;
  PairedRoots pp, pq;
  BigRational prefactor;
  TowerPtr tower;
};

Prepared prepare(const HGInstance& inst, const EngineConfig& cfg) {
  Prepared pr;
  Factorization fp = factor_over_q(inst.p, cfg), fq = factor_over_q(inst.q, cfg);
  TowerRequest req = tower_request(fp);
  req.merge(tower_request(fq));
  req.need_i = true;
  pr.tower = build_tower(req);
  pr.ap = check_assumption1(inst.p, cfg, pr.tower);
  if (!pr.ap.holds) throw UnsupportedError("p fails " + pr.ap.message());
  pr.aq = check_assumption1(inst.q, cfg, pr.tower);
  if (!pr.aq.holds) throw UnsupportedError("q fails " + pr.aq.message());
  pr.pp = pair_roots(pr.ap.factorization, pr.ap.certificate);
  pr.pq = pair_roots(pr.aq.factorization, pr.aq.certificate);
  pr.prefactor = inst.u0;
  for (const auto& [r, mult] : pr.pp.rational_roots)
    pr.prefactor *= gamma_of_positive_integer(-r).pow(mult);
  for (const auto& [r, mult] : pr.pq.rational_roots)
    pr.prefactor /= gamma_of_positive_integer(-r).pow(mult);
  return pr;
}

std::vector<TowerElem> pair_ws(const std::vector<RootPair>& a, const std::vector<RootPair>& b) {
  std::vector<TowerElem> ws;
  for (const auto& x : a) ws.push_back(x.w);
  for (const auto& x : b) ws.push_back(x.w);
  return ws;
}

}  // namespace

ConditionalVerdict decide_conditional(const HGInstance& inst, const EngineConfig& cfg, const ConditionalOptions& opt) {
  inst.validate();
  if (!inst.monic()) throw UnsupportedError("the conditional procedure needs monic p and q");
  ConditionalVerdict cv;
  LimitComparator limit = [&](const BigRational& t) {
    Prepared pr = prepare(inst, cfg);
    IdentityInput in{pr.pp.pairs, pr.pq.pairs, pr.prefactor, t};
    BasisResult basis = build_basis(pair_ws(in.p_pairs, in.q_pairs), pr.tower);
    SymbolicIdentity id = build_identity(in, basis);
    IdentityDecision dec = decide_identity(id, opt.identity);
    LimitComparison lc;
    if (dec.outcome == IdentityDecision::Outcome::HoldsUnconditionally) {
      IdentityInput rev = in;
      std::reverse(rev.p_pairs.begin(), rev.p_pairs.end());
      std::reverse(rev.q_pairs.begin(), rev.q_pairs.end());
      BasisResult b2 = build_basis(pair_ws(rev.p_pairs, rev.q_pairs), pr.tower);
      if (!build_identity(rev, b2).poly.is_zero())
        throw DomainError("internal error: cancelled identity failed its independent replay");
      lc.evidence.relation = Relation::Equal;
      lc.evidence.rationale = Rationale::SchanuelIdentity;
    } else {
      cv.identity_enclosure = enclose_identity(id, cfg);
      lc.evidence = compare_identity(id, cfg);
      lc.conditional = !dec.unconditional();
      if (opt.galois_norm) cv.norm = galois_norm_poly({id.poly, id.tower});
    }
    cv.identity_trace = std::move(id);
    cv.identity_decision = dec;
    cv.basis = std::move(basis);
    cv.assumption_p = std::move(pr.ap);
    cv.assumption_q = std::move(pr.aq);
    return lc;
  };
  cv.verdict = decide_with(inst, limit, cfg);
  cv.conditionality = cv.verdict.conditionality;
  return cv;
}

}  // namespace hgd
