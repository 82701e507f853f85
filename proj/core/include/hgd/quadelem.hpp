#pragma once

#include "hgd/bigrational.hpp"

#include <string>

namespace hgd {

bool is_squarefree(const BigInt& n);
// Writes n = s^2 * core with core squarefree (sign carried by core).
BigInt squarefree_part(const BigInt& n, BigInt* square_root_of_rest = nullptr);

// a + b*sqrt(d) with d squarefree and d != 1.  For d < 0 the square root is
// i*sqrt(|d|).  Rationals may live in any context with b = 0.
class QuadElem {
 public:
  QuadElem(BigRational a, BigRational b, BigInt d);
  static QuadElem rational(const BigRational& a, const BigInt& d) { return QuadElem(a, 0, d); }

  const BigRational& a() const { return a_; }
  const BigRational& b() const { return b_; }
  const BigInt& d() const { return d_; }

  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadElem conjugate() const { return QuadElem(a_, -b_, d_); }
  BigRational norm() const { return a_ * a_ - b_ * b_ * BigRational(d_); }
  BigRational trace() const { return a_ + a_; }
  QuadElem inverse() const;
  QuadElem pow(long exponent) const;

  // Integer shape: a, b in Z, or both in Z + 1/2 when d = 1 mod 4.
  bool is_algebraic_integer() const;

  std::string str() const;

  friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
  friend QuadElem operator-(const QuadElem& x) { return QuadElem(-x.a_, -x.b_, x.d_); }
  friend QuadElem operator+(const QuadElem& x, const BigRational& r) { return QuadElem(x.a_ + r, x.b_, x.d_); }
  friend QuadElem operator-(const QuadElem& x, const BigRational& r) { return QuadElem(x.a_ - r, x.b_, x.d_); }
  friend QuadElem operator*(const QuadElem& x, const BigRational& r) { return QuadElem(x.a_ * r, x.b_ * r, x.d_); }
  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  BigRational a_;
  BigRational b_;
  BigInt d_;
};

enum class QuadOp { Add, Sub, Mul, Div, Pow };
QuadElem quad_arith(QuadOp op, const QuadElem& x, const QuadElem& y);
QuadElem quad_arith(QuadOp op, const QuadElem& x, long exponent);

}  // namespace hgd
