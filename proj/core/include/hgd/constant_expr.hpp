#pragma once

#include "hgd/bigrational.hpp"
#include "hgd/numeric.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace hgd {

// Expression tree over rationals, pi, sqrt of rationals and e^{pi*sqrt(m)/D},
// closed under field operations and the elementary functions needed by the
// canonical constants.
class ConstExpr {
 public:
  enum class Kind { Rational, Pi, SqrtRational, ExpPiSqrt, Add, Sub, Mul, Div, Neg, PowInt, Exp, Sinh, Cosh, Sin, Cos };

  static ConstExpr rational(const BigRational& q);
  static ConstExpr pi();
  static ConstExpr sqrt_rational(const BigRational& q);
  // e^{pi * sqrt(m) / D}
  static ConstExpr exp_pi_sqrt(long m, long D);

  ConstExpr pow(long n) const;
  ConstExpr exp() const;
  ConstExpr sinh() const;
  ConstExpr cosh() const;
  ConstExpr sin() const;
  ConstExpr cos() const;

  friend ConstExpr operator+(const ConstExpr& a, const ConstExpr& b);
  friend ConstExpr operator-(const ConstExpr& a, const ConstExpr& b);
  friend ConstExpr operator*(const ConstExpr& a, const ConstExpr& b);
  friend ConstExpr operator/(const ConstExpr& a, const ConstExpr& b);
  friend ConstExpr operator-(const ConstExpr& a);

  Kind kind() const;
  std::string str() const;

  // Evaluation at a fixed working precision; may throw IntervalIndeterminate.
  Interval evaluate(mpfr_prec_t working_bits) const;

 struct Node;

 private:
  explicit ConstExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Enclosure whose width is at most 2^(slack - precision_bits) * max(1, |value|).
// Working precision escalates internally; exceeding cap_bits raises ResourceError.
Interval eval_enclosure(const ConstExpr& expr, long precision_bits, long cap_bits = 65536);

// Instrumentation: number of enclosure evaluations performed in this process.
std::uint64_t interval_evaluation_count();
void note_interval_evaluation();

inline constexpr long kEnclosureSlack = 4;

}  // namespace hgd
