#pragma once

// Reference computations used by the tests.  They deliberately avoid the
// engine's scanner, bounds and constant machinery: plain GMP products, a
// floating filter of our own, and a tiny Laurent polynomial type.

#include "hgd/sequence.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

inline mpz_class eval(const hgd::IntPoly& f, long k) {
  mpz_class acc = 0;
  const auto& c = f.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * k + *it;
  return acc;
}

// u_n = num / den, unreduced.
struct ExactTerm {
  mpz_class num, den;
};

inline ExactTerm exact_term(const hgd::HGInstance& I, long n) {
  ExactTerm u{I.u0.num(), I.u0.den()};
  for (long k = 0; k < n && u.num != 0; ++k) {
    u.num *= eval(I.q, k);
    u.den *= eval(I.p, k);
  }
  if (u.den < 0) {
    u.den = -u.den;
    u.num = -u.num;
  }
  return u;
}

// sign(u - t)
inline int cmp(const ExactTerm& u, const mpq_class& t) {
  mpz_class lhs = u.num * t.get_den(), rhs = u.den * t.get_num();
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

// sign(|u| - |t|)
inline int cmp_abs(const ExactTerm& u, const mpq_class& t) {
  mpz_class lhs = abs(u.num * t.get_den()), rhs = abs(u.den * t.get_num());
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

inline mpq_class to_mpq(const hgd::BigRational& r) { return r.raw(); }

// First index in 0..upto at which the question is settled positively
// (u_n = t for membership, u_n < t for threshold), by a floating filter of
// log|u_n| with exact recomputation whenever the filter is within 1e-9.
inline std::optional<long> first_hit(const hgd::HGInstance& I, long upto) {
  const bool mem = I.problem == hgd::Problem::Membership;
  const mpq_class t = to_mpq(I.t);
  const double log_t = t == 0 ? 0.0 : std::log(std::fabs(t.get_d()));
  int sign = sgn(I.u0.num());
  long double log_u = sign ? std::log(std::fabs(static_cast<long double>(to_mpq(I.u0).get_d()))) : 0.0L;
  for (long n = 0; n <= upto; ++n) {
    int ts = sgn(t);
    int c;  // sign(u_n - t) when decidable
    if (sign == 0) {
      c = -ts;
    } else if (sign != ts) {
      c = sign > ts ? 1 : -1;
    } else {
      long double gap = log_u - static_cast<long double>(log_t);
      if (std::fabs(static_cast<double>(gap)) > 1e-9) {
        c = gap > 0 ? sign : -sign;
      } else {
        c = cmp(exact_term(I, n), t);
      }
    }
    if (mem ? c == 0 : c < 0) return n;
    if (sign == 0) continue;
    mpz_class pv = eval(I.p, n), qv = eval(I.q, n);
    if (qv == 0) {
      sign = 0;
      continue;
    }
    sign *= sgn(pv) * sgn(qv);
    long ep = 0, eq = 0;
    double mp = mpz_get_d_2exp(&ep, pv.get_mpz_t());
    double mq = mpz_get_d_2exp(&eq, qv.get_mpz_t());
    log_u += std::log(std::fabs(static_cast<long double>(mq))) - std::log(std::fabs(static_cast<long double>(mp))) +
             static_cast<long double>(eq - ep) * std::log(2.0L);
  }
  return std::nullopt;
}

// Laurent polynomials over Q in one variable.
struct Laurent {
  std::map<long, mpq_class> c;

  static Laurent mono(long e, mpq_class v = 1) {
    Laurent r;
    if (v != 0) r.c[e] = v;
    return r;
  }
  Laurent& add(const Laurent& o, const mpq_class& s = 1) {
    for (const auto& [e, v] : o.c) {
      c[e] += s * v;
      if (c[e] == 0) c.erase(e);
    }
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a.add(b); }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a.add(b, -1); }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [e1, v1] : a.c)
      for (const auto& [e2, v2] : b.c) r.add(mono(e1 + e2, v1 * v2));
    return r;
  }
  bool is_zero() const { return c.empty(); }
};

// Outward-rounded [lo, hi] of x * exp([-E, E]) for x > 0.
struct Bracket {
  mpfr_t lo, hi;
  Bracket(const mpq_class& x, const mpq_class& E, mpfr_prec_t prec) {
    mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_t e;
    mpfr_init2(e, prec);
    mpfr_set_q(e, E.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(e, e, MPFR_RNDU);
    mpfr_set_q(hi, x.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(hi, hi, e, MPFR_RNDU);
    mpfr_set_q(e, E.get_mpq_t(), MPFR_RNDU);
    mpfr_neg(e, e, MPFR_RNDD);
    mpfr_exp(e, e, MPFR_RNDD);
    mpfr_set_q(lo, x.get_mpq_t(), MPFR_RNDD);
    mpfr_mul(lo, lo, e, MPFR_RNDD);
    mpfr_clear(e);
  }
  ~Bracket() { mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr)); }
  Bracket(const Bracket&) = delete;
  Bracket& operator=(const Bracket&) = delete;
};

}  // namespace oracle
