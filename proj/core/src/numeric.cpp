#include "hgd/numeric.hpp"

#include "hgd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hgd {

Mpfr::Mpfr(mpfr_prec_t prec) { mpfr_init2(value_, prec); }

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.prec());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

std::string Mpfr::str(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

// ---------------------------------------------------------------- Real

namespace {
mpfr_prec_t pmax(mpfr_prec_t a, mpfr_prec_t b) { return std::max(a, b); }
}  // namespace

Real::Real(const BigRational& q, mpfr_prec_t prec) : v_(prec) {
  mpfr_set_q(v_.get(), q.raw().get_mpq_t(), MPFR_RNDN);
}

Real::Real(double x, mpfr_prec_t prec) : v_(prec) { mpfr_set_d(v_.get(), x, MPFR_RNDN); }

Real Real::abs() const {
  Real r(prec());
  mpfr_abs(r.get(), get(), MPFR_RNDN);
  return r;
}

Real Real::sqrt() const {
  Real r(prec());
  mpfr_sqrt(r.get(), get(), MPFR_RNDN);
  return r;
}

BigInt Real::round_to_integer() const {
  if (!mpfr_number_p(get())) throw DomainError("rounding a non-finite value");
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), get(), MPFR_RNDN);
  return z;
}

BigRational Real::to_rational() const {
  if (!mpfr_number_p(get())) throw DomainError("converting a non-finite value");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), get());
  return BigRational(q.get_num(), q.get_den());
}

Real operator+(const Real& a, const Real& b) {
  Real r(pmax(a.prec(), b.prec()));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(pmax(a.prec(), b.prec()));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(pmax(a.prec(), b.prec()));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(pmax(a.prec(), b.prec()));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

Real Complex::abs() const { return norm().sqrt(); }

Complex operator/(const Complex& a, const Complex& b) {
  Real n = b.norm();
  Complex num = a * b.conj();
  return {num.re / n, num.im / n};
}

// ---------------------------------------------------------------- Interval

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_zero(lo_.get(), 1);
  mpfr_set_zero(hi_.get(), 1);
}

Interval::Interval(const BigRational& q, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_q(lo_.get(), q.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), q.raw().get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Mpfr& lo, const Mpfr& hi) : lo_(lo), hi_(hi) {
  if (mpfr_greater_p(lo_.get(), hi_.get())) throw DomainError("interval with lo > hi");
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(pmax(a.prec(), b.prec()));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

bool Interval::contains(const BigRational& q) const {
  return mpfr_cmp_q(lo_.get(), q.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.raw().get_mpq_t()) >= 0;
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_.get(), other.hi_.get()) && mpfr_lessequal_p(other.lo_.get(), hi_.get());
}

bool Interval::is_subset_of(const Interval& other) const {
  return mpfr_lessequal_p(other.lo_.get(), lo_.get()) && mpfr_lessequal_p(hi_.get(), other.hi_.get());
}

Mpfr Interval::width() const {
  Mpfr w(prec());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

double Interval::mid_double() const {
  Mpfr m(prec() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

double Interval::log2_width() const {
  Mpfr w = width();
  if (mpfr_zero_p(w.get())) return -1e18;
  Mpfr l(53);
  mpfr_log2(l.get(), w.get(), MPFR_RNDU);
  return l.to_double();
}

std::string Interval::str(int digits) const { return "[" + lo_.str(digits) + ", " + hi_.str(digits) + "]"; }

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(pmax(a.prec(), b.prec()));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(pmax(a.prec(), b.prec()));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = pmax(a.prec(), b.prec());
  Interval r(p);
  Mpfr t(p);
  const Mpfr* xs[2] = {&a.lo_, &a.hi_};
  const Mpfr* ys[2] = {&b.lo_, &b.hi_};
  bool first = true;
  for (auto* x : xs) {
    for (auto* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw IntervalIndeterminate("interval division by an enclosure of zero");
  Interval inv(b.prec());
  mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
  return a * inv;
}

Interval Interval::exp() const {
  Interval r(prec());
  mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (!positive()) throw IntervalIndeterminate("log of an interval that is not positive");
  Interval r(prec());
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (negative()) throw DomainError("sqrt of a negative interval");
  Interval r(prec());
  if (mpfr_sgn(lo_.get()) < 0) {
    mpfr_set_zero(r.lo_.get(), 1);
  } else {
    mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::rootn(unsigned long n) const {
  if (!positive()) throw IntervalIndeterminate("rootn of an interval that is not positive");
  Interval r(prec());
  mpfr_rootn_ui(r.lo_.get(), lo_.get(), n, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_.get(), hi_.get(), n, MPFR_RNDU);
  return r;
}

namespace {

// f is 1-Lipschitz; evaluate at the midpoint and widen by the radius.
template <typename F>
Interval lipschitz_one(const Interval& x, F f) {
  mpfr_prec_t p = x.prec();
  Mpfr mid(p + 2), rad(p), tmp(p);
  mpfr_add(mid.get(), x.lo().get(), x.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  mpfr_sub(rad.get(), x.hi().get(), mid.get(), MPFR_RNDU);
  mpfr_sub(tmp.get(), mid.get(), x.lo().get(), MPFR_RNDU);
  mpfr_max(rad.get(), rad.get(), tmp.get(), MPFR_RNDU);
  Mpfr lo(p), hi(p);
  f(lo.get(), mid.get(), MPFR_RNDD);
  f(hi.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), rad.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi.get(), rad.get(), MPFR_RNDU);
  if (mpfr_cmp_si(lo.get(), -1) < 0) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
  return Interval(lo, hi);
}

}  // namespace

Interval Interval::sin() const {
  return lipschitz_one(*this, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t m) { mpfr_sin(r, a, m); });
}

Interval Interval::cos() const {
  return lipschitz_one(*this, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t m) { mpfr_cos(r, a, m); });
}

Interval Interval::abs() const {
  if (positive()) return *this;
  if (negative()) return -*this;
  Interval r(prec());
  mpfr_set_zero(r.lo_.get(), 1);
  Mpfr a(prec());
  mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(r.hi_.get(), a.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::pow(long n) const {
  if (n < 0) return Interval(BigRational(1), prec()) / pow(-n);
  Interval result(BigRational(1), prec());
  Interval base = *this;
  auto e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

Interval Interval::widen_log(const BigRational& eps) const {
  if (eps.sign() < 0) throw DomainError("negative log envelope");
  Interval e = Interval::hull(Interval(-eps, prec()), Interval(eps, prec())).exp();
  return *this * e;
}

// ---------------------------------------------------------------- ComplexInterval

ComplexInterval ComplexInterval::root_of_unity(long k, long n, mpfr_prec_t prec) {
  Interval angle = Interval::pi(prec) * Interval(BigRational(2 * k) / BigRational(n), prec);
  return {angle.cos(), angle.sin()};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  Interval n = b.re * b.re + b.im * b.im;
  ComplexInterval num = a * b.conj();
  return {num.re / n, num.im / n};
}

ComplexInterval ComplexInterval::exp() const {
  Interval m = re.exp();
  return {m * im.cos(), m * im.sin()};
}

ComplexInterval ComplexInterval::pow(long n) const {
  if (n < 0) {
    ComplexInterval one(Interval(BigRational(1), prec()), Interval(prec()));
    return one / pow(-n);
  }
  ComplexInterval result(Interval(BigRational(1), prec()), Interval(prec()));
  ComplexInterval base = *this;
  auto e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace hgd
