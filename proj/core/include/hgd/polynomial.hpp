#pragma once

#include "hgd/bigrational.hpp"
#include "hgd/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hgd {

// Dense univariate polynomial, coefficients in ascending degree, no trailing
// zeros.  The zero polynomial has an empty coefficient vector and degree -1.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }
  static Polynomial monomial(const T& c, std::size_t k) {
    std::vector<T> v(k + 1, T(0));
    v[k] = c;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& lead() const {
    if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == T(1); }

  template <typename U>
  U eval_as(const U& x) const {
    U acc = U(T(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }
  T eval(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> v;
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * T(static_cast<long>(i)));
    return Polynomial(std::move(v));
  }

  // f(g(x))
  Polynomial compose(const Polynomial& g) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
    return acc;
  }

  // f(x + r)
  Polynomial shift_by(const T& r) const { return compose(Polynomial(std::vector<T>{r, T(1)})); }

  // f(-x)
  Polynomial reflect() const {
    std::vector<T> v = c_;
    for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
    return Polynomial(std::move(v));
  }

  Polynomial scaled(const T& s) const {
    std::vector<T> v = c_;
    for (auto& x : v) x = x * s;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = v[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> v = a.c_;
    for (auto& x : v) x = -x;
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(v));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial pow(unsigned n) const {
    Polynomial r = constant(T(1));
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPoly = Polynomial<BigInt>;
using RatPoly = Polynomial<BigRational>;

RatPoly to_rat(const IntPoly& f);
// Rational polynomial with integer coefficients back to IntPoly; throws otherwise.
IntPoly to_int(const RatPoly& f);
BigInt content(const IntPoly& f);
// Primitive integer polynomial with positive leading coefficient, proportional to f.
IntPoly primitive_part(const RatPoly& f);
RatPoly make_monic(const RatPoly& f);

std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b);
// Monic gcd over Q (zero if both inputs are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);
// Exact quotient a / b over Z; throws DomainError when b does not divide a.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& b, const IntPoly& a);

// Yun's algorithm: f = c * prod g_i^i with g_i monic squarefree, pairwise coprime.
std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f);

IntPoly cyclotomic(long n);
long euler_phi(long n);
int mobius(long n);

// The smaller of the Cauchy bound 1 + max |a_i / a_n| and the Fujiwara bound
// (rounded up, plus one); every complex root has modulus strictly below it.
// Zero for constant polynomials (they have no roots).
BigRational cauchy_bound(const RatPoly& f);
BigRational cauchy_bound(const IntPoly& f);

// Number of distinct real roots in the half-open interval (a, b].
int count_real_roots(const RatPoly& f, const BigRational& a, const BigRational& b);
// Number of distinct negative real roots.
int count_negative_roots(const RatPoly& f);

enum class PolyOp { Add, Mul, DivRem, Gcd, Content, ShiftBy };

// Parses "x^4 - 2*x^2 + 1", "x**3-2", "3x+1", "(x^2-2)^2*(x+5)" (variable x or n).
IntPoly parse_int_poly(const std::string& text);

}  // namespace hgd
