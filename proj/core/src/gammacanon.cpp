#include "hgd/gammacanon.hpp"

#include "hgd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hgd {

namespace {

QuadElem negate_all(const QuadElem& x) { return -x; }

BigInt field_of(const std::vector<QuadElem>& args, bool* any_irrational) {
  BigInt d = 0;
  *any_irrational = false;
  for (const auto& a : args) {
    if (a.is_rational()) continue;
    if (*any_irrational && a.d() != d) throw UnsupportedError("Gamma arguments from different quadratic fields");
    d = a.d();
    *any_irrational = true;
  }
  return d;
}

QuadElem in_field(const BigRational& a, const BigRational& b, const BigInt& m) {
  if (m == 1) {
    if (!b.is_zero()) throw DomainError("internal error: sqrt(1) coordinate");
    return QuadElem(a, 0, BigInt(-1));
  }
  return QuadElem(a, b, m);
}

}  // namespace

GammaProduct limit_as_gamma(const IntPoly& p, const IntPoly& q, const RootMultiset& roots_p,
                            const RootMultiset& roots_q) {
  auto cls = classify(p, q);
  if (!cls.harmonious()) throw DomainError("limit_as_gamma needs a harmonious pair, got " + cls.str());
  if (roots_p.total_multiplicity() != p.degree() || roots_q.total_multiplicity() != q.degree())
    throw DomainError("root multisets do not match the polynomial degrees");
  GammaProduct gp;
  for (const auto& e : roots_p.entries)
    for (int i = 0; i < e.multiplicity; ++i) gp.numerator.push_back(negate_all(e.value));
  for (const auto& e : roots_q.entries)
    for (int i = 0; i < e.multiplicity; ++i) {
      QuadElem arg = negate_all(e.value);
      if (arg.is_rational() && arg.a().is_integer() && arg.a().sign() <= 0)
        throw DomainError("q has a nonnegative integer root; the sequence has a zero tail");
      gp.denominator.push_back(arg);
    }
  for (const auto& a : gp.numerator)
    if (a.is_rational() && a.a().is_integer() && a.a().sign() <= 0)
      throw DomainError("p has a nonnegative integer root");
  return gp;
}

ShiftResult shift_to_base(const QuadElem& arg) {
  const BigRational& a = arg.a();
  if (!a.is_half_integer_multiple()) throw DomainError("rational part " + a.str() + " is not in Z/2");
  if (arg.is_rational() && a.is_integer() && a.sign() <= 0) throw DomainError("Gamma pole at " + a.str());
  ShiftResult r{QuadElem::rational(1, arg.d()), !a.is_integer(), QuadElem(0, arg.b(), arg.d()), BigRational(0)};
  BigRational base = r.half ? BigRational(1, 2) : BigRational(0);
  if (arg.is_rational()) {
    // rational base 1 or 1/2
    if (!r.half) base = 1;
    r.base_rational = base;
  }
  QuadElem cur = r.w + base;  // Gamma(cur) with cur = base point
  BigInt steps = (a - base).num();  // a - base is an integer
  if (steps >= 0) {
    for (BigInt j = 0; j < steps; ++j) {
      r.A = r.A * cur;  // Gamma(z + 1) = z Gamma(z)
      cur = cur + BigRational(1);
    }
  } else {
    for (BigInt j = 0; j > steps; --j) {
      cur = cur - BigRational(1);  // Gamma(z) = Gamma(z + 1) / z
      if (cur.is_zero()) throw DomainError("Gamma pole");
      r.A = r.A / cur;
    }
  }
  return r;
}

PairForm pair_product(const BigRational& rho, const QuadElem& w_in) {
  if (w_in.is_rational()) throw DomainError("pair_product needs an irrational w");
  if (w_in.d() >= 0) throw UnsupportedError("pair_product closed forms cover imaginary quadratic w only");
  if (!rho.is_half_integer_multiple()) throw DomainError("rho " + rho.str() + " is not in Z/2");
  QuadElem w = w_in.b().sign() > 0 ? w_in : -w_in;
  PairForm pf;
  pf.rho = rho;
  pf.w = w;
  pf.kind = rho.is_integer() ? PairForm::Kind::IntegerRho : PairForm::Kind::HalfIntegerRho;
  ShiftResult s1 = shift_to_base(w + rho);
  ShiftResult s2 = shift_to_base(-w + rho);
  QuadElem A = s1.A * s2.A;
  if (!A.is_rational()) throw DomainError("internal error: pair prefactor is not rational");
  pf.A = A.a();
  return pf;
}

ConstExpr PairForm::closed_form() const {
  BigInt m = -w.d();
  // pi y = pi * b * sqrt(m)
  ConstExpr y = ConstExpr::rational(w.b()) * ConstExpr::sqrt_rational(BigRational(m));
  ConstExpr piy = ConstExpr::pi() * y;
  if (kind == Kind::IntegerRho) return ConstExpr::pi() / (y * piy.sinh());
  return ConstExpr::pi() / piy.cosh();
}

ConstExpr CanonicalConstant::theta_expr() const {
  ConstExpr t = ConstExpr::rational(theta.a());
  if (!theta.b().is_zero())
    t = t + ConstExpr::rational(theta.b()) * ConstExpr::sqrt_rational(BigRational(theta.d()));
  return t;
}

namespace {

ConstExpr horner(const IntPoly& f, const ConstExpr& x) {
  ConstExpr acc = ConstExpr::rational(0);
  bool first = true;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    if (first) {
      acc = ConstExpr::rational(BigRational(*it));
      first = false;
    } else {
      acc = acc * x;
      if (*it != 0) acc = acc + ConstExpr::rational(BigRational(*it));
    }
  }
  return acc;
}

}  // namespace

ConstExpr CanonicalConstant::expr() const {
  ConstExpr v = theta_expr();
  if (ell != 0) v = v * ConstExpr::pi().pow(ell);
  if (base_trivial) return v;
  if (!m.fits_slong_p()) throw UnsupportedError("field discriminant too large");
  ConstExpr x = ConstExpr::exp_pi_sqrt(m.get_si(), D);
  return v * horner(f, x) / horner(g, x);
}

Interval CanonicalConstant::enclose(long bits, long cap_bits) const { return eval_enclosure(expr(), bits, cap_bits); }

std::string CanonicalConstant::str() const {
  std::string s = "theta=" + theta.str() + ", ell=" + std::to_string(ell);
  if (base_trivial) return s + ", base trivial";
  return s + ", f=" + f.str("X") + ", g=" + g.str("X") + ", X=exp(pi*sqrt(" + to_string(m) + ")/" +
         std::to_string(D) + ")";
}

CanonicalConstant canonicalize(const GammaProduct& gp, const BigRational& prefactor) {
  bool irr_n = false, irr_d = false;
  BigInt dn = field_of(gp.numerator, &irr_n), dd = field_of(gp.denominator, &irr_d);
  if (irr_n && irr_d && dn != dd) throw UnsupportedError("Gamma arguments from different quadratic fields");
  BigInt d = irr_n ? dn : dd;
  bool any = irr_n || irr_d;
  if (any && d > 0) throw UnsupportedError("real quadratic Gamma arguments need the conditional procedure");
  // harmonious: equal argument sums
  BigRational sa(0), sb(0), ta(0), tb(0);
  for (const auto& a : gp.numerator) {
    sa += a.a();
    sb += a.b();
  }
  for (const auto& a : gp.denominator) {
    ta += a.a();
    tb += a.b();
  }
  if (sa != ta || sb != tb) throw DomainError("Gamma argument sums differ; the product does not converge");

  CanonicalConstant C;
  C.m = any ? BigInt(-d) : BigInt(1);
  C.theta = in_field(prefactor * gp.prefactor, 0, C.m);
  if (C.theta.is_zero()) throw DomainError("canonical constant with zero prefactor");
  auto one_in = [&](const BigRational& q) { return in_field(q, 0, C.m); };

  struct Pair {
    PairForm pf;
    bool numerator;
  };
  std::vector<Pair> pairs;
  auto collect = [&](const std::vector<QuadElem>& args, bool numerator) {
    std::vector<QuadElem> pending;
    for (const auto& a : args) {
      if (a.is_rational()) {
        if (!a.a().is_integer() || a.a().sign() <= 0)
          throw DomainError("rational Gamma argument " + a.a().str() + " is not a positive integer");
        BigRational fact(1);
        for (BigInt j = 2; j < a.a().num(); ++j) fact *= BigRational(j);
        C.theta = numerator ? C.theta * one_in(fact) : C.theta * one_in(fact.inverse());
        continue;
      }
      pending.push_back(a);
    }
    // pair each b > 0 argument with its conjugate
    std::vector<bool> used(pending.size(), false);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (used[i] || pending[i].b().sign() < 0) continue;
      std::size_t j = 0;
      for (; j < pending.size(); ++j)
        if (!used[j] && j != i && pending[j] == pending[i].conjugate()) break;
      if (j == pending.size()) throw DomainError("Gamma arguments are not closed under conjugation");
      used[i] = used[j] = true;
      pairs.push_back({pair_product(pending[i].a(), QuadElem(0, pending[i].b(), pending[i].d())), numerator});
    }
    for (std::size_t i = 0; i < pending.size(); ++i)
      if (!used[i]) throw DomainError("Gamma arguments are not closed under conjugation");
  };
  collect(gp.numerator, true);
  collect(gp.denominator, false);

  BigInt D = 1;
  for (const auto& pr : pairs) D = lcm(D, pr.pf.w.b().den());
  C.D = D.get_si();
  RatPoly F = RatPoly::constant(1), G = RatPoly::constant(1);
  for (const auto& pr : pairs) {
    const auto& pf = pr.pf;
    BigRational eb = pf.w.b() * BigRational(D);
    unsigned long e = eb.num().get_ui();
    RatPoly xe = RatPoly::monomial(BigRational(1), e);
    RatPoly den = RatPoly::monomial(BigRational(1), 2 * e) +
                  RatPoly::constant(pf.kind == PairForm::Kind::IntegerRho ? BigRational(-1) : BigRational(1));
    // pair value = A * 2 pi x^e / (c * den), c = b sqrt(m) (IntegerRho) or 1
    QuadElem factor = one_in(pf.A * BigRational(2));
    if (pf.kind == PairForm::Kind::IntegerRho) {
      QuadElem c = C.m == 1 ? one_in(pf.w.b()) : QuadElem(0, pf.w.b(), C.m);
      factor = factor / c;
    }
    if (pr.numerator) {
      C.theta = C.theta * factor;
      F = F * xe;
      G = G * den;
      ++C.ell;
    } else {
      C.theta = C.theta / factor;
      F = F * den;
      G = G * xe;
      --C.ell;
    }
  }
  RatPoly h = gcd(F, G);
  F = divrem(F, h).first;
  G = divrem(G, h).first;
  C.f = primitive_part(F);
  C.g = primitive_part(G);
  // F = cf * f, G = cg * g
  BigRational cf = F.lead() / BigRational(C.f.lead());
  BigRational cg = G.lead() / BigRational(C.g.lead());
  C.theta = C.theta * one_in(cf / cg);
  C.base_trivial = C.f.degree() == 0 && C.g.degree() == 0;
  if (C.base_trivial) {
    C.theta = C.theta * one_in(BigRational(C.f.lead()) / BigRational(C.g.lead()));
    C.f = IntPoly{BigInt(1)};
    C.g = IntPoly{BigInt(1)};
    C.D = 1;
  }
  if (C.theta.is_zero()) throw DomainError("internal error: zero theta");
  RatPoly check = gcd(to_rat(C.f), to_rat(C.g));
  if (check.degree() != 0) throw DomainError("internal error: f and g are not coprime");
  return C;
}

CanonicalConstant limit_constant(const HGInstance& inst, const EngineConfig& cfg) {
  if (!inst.monic()) throw UnsupportedError("the deciders need monic p and q");
  auto rp = roots_quadratic(inst.p, cfg);
  auto rq = roots_quadratic(inst.q, cfg);
  if (!rp || !rq) throw UnsupportedError("p or q has an irreducible factor of degree >= 3");
  GammaProduct gp = limit_as_gamma(inst.p, inst.q, *rp, *rq);
  return canonicalize(gp, inst.u0);
}

TailEnvelope tail_envelope(const IntPoly& p, const IntPoly& q, std::int64_t K) {
  int m = p.degree();
  IntPoly h = q - p;
  TailEnvelope env;
  if (h.is_zero()) {
    env.K = std::max<std::int64_t>(K, 0);
    env.E = 0;
    return env;
  }
  if (m < 2 || h.degree() > m - 2) throw DomainError("tail_envelope needs a harmonious pair");
  BigInt H = 0, P = 0;
  for (const auto& c : h.coeffs()) H += abs(c);
  for (int i = 0; i < m; ++i) P += abs(p.coeff(i));
  BigInt need = std::max<BigInt>({BigInt(2) * P, BigInt(2), BigInt(0)});
  BigInt s = sqrt(BigInt(4) * H) + 1;  // >= 2 sqrt(H)
  need = std::max(need, s);
  if (!need.fits_slong_p()) throw ResourceError("tail envelope start index too large");
  env.K = std::max<std::int64_t>(K, need.get_si());
  env.E = BigRational(BigInt(4) * H, BigInt(static_cast<long>(env.K - 1)));
  return env;
}

bool matches_partial_product(const CanonicalConstant& C, const HGInstance& inst, std::int64_t K, long bits) {
  TailEnvelope env = tail_envelope(inst.p, inst.q, K);
  const mpfr_prec_t prec = bits + 64;
  Interval rhs(inst.u0, prec);
  for (std::int64_t k = 0; k < env.K; ++k) {
    BigInt kk(static_cast<long>(k));
    rhs = rhs * Interval(BigRational(inst.q.eval(kk)), prec) / Interval(BigRational(inst.p.eval(kk)), prec);
  }
  Interval lhs = C.enclose(bits);
  rhs = rhs.widen_log(env.E);
  return lhs.overlaps(rhs);
}

}  // namespace hgd
