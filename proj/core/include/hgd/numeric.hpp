#pragma once

#include "hgd/bigrational.hpp"

#include <mpfr.h>

#include <string>

namespace hgd {

// Owning wrapper around mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 64);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(value_); }
  std::string str(int digits = 20) const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
  bool live_ = true;
};

// Round-to-nearest real, used only where results are verified exactly afterwards
// (root approximation, factor search, numeric labelling of roots).
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) : v_(prec) { mpfr_set_zero(v_.get(), 1); }
  Real(const BigRational& q, mpfr_prec_t prec);
  Real(double x, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return v_.prec(); }
  mpfr_srcptr get() const { return v_.get(); }
  mpfr_ptr get() { return v_.get(); }
  double to_double() const { return v_.to_double(); }
  std::string str(int digits = 20) const { return v_.str(digits); }
  int sign() const { return mpfr_sgn(v_.get()); }
  Real abs() const;
  Real sqrt() const;
  // Nearest integer; nullopt-like failure is signalled via *ok when not finite.
  BigInt round_to_integer() const;
  BigRational to_rational() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }

 private:
  Mpfr v_;
};

struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t prec() const { return re.prec(); }
  Real abs() const;
  Real norm() const { return re * re + im * im; }
  Complex conj() const { return Complex(re, -im); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b);
};

// Closed interval [lo, hi] with MPFR endpoints rounded outward.  Every
// operation returns an enclosure of the exact image of its arguments.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 64);
  Interval(const BigRational& q, mpfr_prec_t prec);
  Interval(const Mpfr& lo, const Mpfr& hi);

  static Interval pi(mpfr_prec_t prec);
  static Interval hull(const Interval& a, const Interval& b);

  mpfr_prec_t prec() const { return lo_.prec(); }
  const Mpfr& lo() const { return lo_; }
  const Mpfr& hi() const { return hi_; }

  bool contains_zero() const;
  bool contains(const BigRational& q) const;
  bool overlaps(const Interval& other) const;
  bool is_subset_of(const Interval& other) const;
  bool positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool negative() const { return mpfr_sgn(hi_.get()) < 0; }
  // -1 / +1 when the whole interval is strictly on one side of 0, else 0.
  int sign() const { return positive() ? 1 : (negative() ? -1 : 0); }
  Mpfr width() const;
  double mid_double() const;
  // log2 of the width, or a very negative number for point intervals.
  double log2_width() const;
  std::string str(int digits = 25) const;

  Interval exp() const;
  Interval log() const;
  Interval sqrt() const;
  Interval rootn(unsigned long n) const;
  Interval sin() const;
  Interval cos() const;
  Interval abs() const;
  Interval pow(long n) const;
  // Interval scaled by [e^{-eps}, e^{eps}] for a rational eps >= 0.
  Interval widen_log(const BigRational& eps) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

 private:
  Mpfr lo_;
  Mpfr hi_;
};

struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  static ComplexInterval real(const Interval& r) { return {r, Interval(r.prec())}; }
  // exp(2*pi*i*k/n)
  static ComplexInterval root_of_unity(long k, long n, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return re.prec(); }
  bool excludes_zero() const { return !re.contains_zero() || !im.contains_zero(); }
  ComplexInterval conj() const { return {re, -im}; }
  ComplexInterval exp() const;
  ComplexInterval pow(long n) const;

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a) { return {-a.re, -a.im}; }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
};

}  // namespace hgd
