#include "hgd/constant_expr.hpp"

#include "hgd/errors.hpp"

#include <atomic>

namespace hgd {

namespace {
std::atomic<std::uint64_t> g_evaluations{0};
}

std::uint64_t interval_evaluation_count() { return g_evaluations.load(); }
void note_interval_evaluation() { g_evaluations.fetch_add(1); }

struct ConstExpr::Node {
  Kind kind;
  BigRational q;
  long m = 0, D = 1, n = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ConstExpr::Node>;

}  // namespace

ConstExpr ConstExpr::rational(const BigRational& q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rational;
  n->q = q;
  return ConstExpr(n);
}

ConstExpr ConstExpr::pi() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pi;
  return ConstExpr(n);
}

ConstExpr ConstExpr::sqrt_rational(const BigRational& q) {
  if (q.sign() < 0) throw DomainError("sqrt of a negative rational in a real expression");
  auto n = std::make_shared<Node>();
  n->kind = Kind::SqrtRational;
  n->q = q;
  return ConstExpr(n);
}

ConstExpr ConstExpr::exp_pi_sqrt(long m, long D) {
  if (m <= 0 || D <= 0) throw DomainError("exp_pi_sqrt needs positive m and D");
  auto n = std::make_shared<Node>();
  n->kind = Kind::ExpPiSqrt;
  n->m = m;
  n->D = D;
  return ConstExpr(n);
}

namespace {

ConstExpr::Kind kind_of(const NodePtr& p) { return p->kind; }

}  // namespace

#define HGD_UNARY(name, K)                   \
  ConstExpr ConstExpr::name() const {        \
    auto n = std::make_shared<Node>();       \
    n->kind = Kind::K;                       \
    n->a = node_;                            \
    return ConstExpr(n);                     \
  }
HGD_UNARY(exp, Exp)
HGD_UNARY(sinh, Sinh)
HGD_UNARY(cosh, Cosh)
HGD_UNARY(sin, Sin)
HGD_UNARY(cos, Cos)
#undef HGD_UNARY

ConstExpr ConstExpr::pow(long e) const {
  auto n = std::make_shared<Node>();
  n->kind = Kind::PowInt;
  n->a = node_;
  n->n = e;
  return ConstExpr(n);
}

#define HGD_BINARY(op, K)                                        \
  ConstExpr operator op(const ConstExpr& x, const ConstExpr& y) { \
    auto n = std::make_shared<ConstExpr::Node>();                \
    n->kind = ConstExpr::Kind::K;                                \
    n->a = x.node_;                                              \
    n->b = y.node_;                                              \
    return ConstExpr(n);                                         \
  }
HGD_BINARY(+, Add)
HGD_BINARY(-, Sub)
HGD_BINARY(*, Mul)
HGD_BINARY(/, Div)
#undef HGD_BINARY

ConstExpr operator-(const ConstExpr& x) {
  auto n = std::make_shared<ConstExpr::Node>();
  n->kind = ConstExpr::Kind::Neg;
  n->a = x.node_;
  return ConstExpr(n);
}

ConstExpr::Kind ConstExpr::kind() const { return kind_of(node_); }

namespace {

std::string render(const NodePtr& p) {
  using K = ConstExpr::Kind;
  switch (p->kind) {
    case K::Rational: return p->q.is_integer() ? p->q.str() : "(" + p->q.str() + ")";
    case K::Pi: return "pi";
    case K::SqrtRational: return "sqrt(" + p->q.str() + ")";
    case K::ExpPiSqrt:
      return "exp(pi*sqrt(" + std::to_string(p->m) + ")/" + std::to_string(p->D) + ")";
    case K::Add: return "(" + render(p->a) + " + " + render(p->b) + ")";
    case K::Sub: return "(" + render(p->a) + " - " + render(p->b) + ")";
    case K::Mul: return render(p->a) + "*" + render(p->b);
    case K::Div: return render(p->a) + "/(" + render(p->b) + ")";
    case K::Neg: return "-" + render(p->a);
    case K::PowInt: return render(p->a) + "^" + std::to_string(p->n);
    case K::Exp: return "exp(" + render(p->a) + ")";
    case K::Sinh: return "sinh(" + render(p->a) + ")";
    case K::Cosh: return "cosh(" + render(p->a) + ")";
    case K::Sin: return "sin(" + render(p->a) + ")";
    case K::Cos: return "cos(" + render(p->a) + ")";
  }
  return "?";
}

Interval eval_node(const NodePtr& p, mpfr_prec_t prec) {
  using K = ConstExpr::Kind;
  switch (p->kind) {
    case K::Rational: return Interval(p->q, prec);
    case K::Pi: return Interval::pi(prec);
    case K::SqrtRational: return Interval(p->q, prec).sqrt();
    case K::ExpPiSqrt: {
      Interval s = Interval(BigRational(p->m), prec).sqrt();
      return (Interval::pi(prec) * s / Interval(BigRational(p->D), prec)).exp();
    }
    case K::Add: return eval_node(p->a, prec) + eval_node(p->b, prec);
    case K::Sub: return eval_node(p->a, prec) - eval_node(p->b, prec);
    case K::Mul: return eval_node(p->a, prec) * eval_node(p->b, prec);
    case K::Div: return eval_node(p->a, prec) / eval_node(p->b, prec);
    case K::Neg: return -eval_node(p->a, prec);
    case K::PowInt: return eval_node(p->a, prec).pow(p->n);
    case K::Exp: return eval_node(p->a, prec).exp();
    case K::Sinh: {
      Interval x = eval_node(p->a, prec);
      Interval half(BigRational(1, 2), prec);
      return (x.exp() - (-x).exp()) * half;
    }
    case K::Cosh: {
      Interval x = eval_node(p->a, prec);
      Interval half(BigRational(1, 2), prec);
      return (x.exp() + (-x).exp()) * half;
    }
    case K::Sin: return eval_node(p->a, prec).sin();
    case K::Cos: return eval_node(p->a, prec).cos();
  }
  throw DomainError("unknown expression node");
}

}  // namespace

std::string ConstExpr::str() const { return render(node_); }

Interval ConstExpr::evaluate(mpfr_prec_t working_bits) const { return eval_node(node_, working_bits); }

Interval eval_enclosure(const ConstExpr& expr, long precision_bits, long cap_bits) {
  if (precision_bits <= 0) throw DomainError("precision_bits must be positive");
  if (precision_bits > cap_bits) {
    throw ResourceError("requested precision " + std::to_string(precision_bits) + " exceeds cap " +
                        std::to_string(cap_bits));
  }
  note_interval_evaluation();
  long working = precision_bits + 32;
  while (true) {
    try {
      Interval r = expr.evaluate(working);
      Interval mag = r.abs();
      double log_mag = mpfr_zero_p(mag.hi().get()) ? 0.0 : std::max(0.0, (double)mpfr_get_exp(mag.hi().get()));
      if (r.log2_width() <= static_cast<double>(kEnclosureSlack - precision_bits) + log_mag) return r;
    } catch (const IntervalIndeterminate&) {
      // fall through to escalation
    }
    if (working >= cap_bits) {
      throw ResourceError("enclosure did not reach " + std::to_string(precision_bits) +
                          " bits below the precision cap " + std::to_string(cap_bits));
    }
    working = std::min<long>(working * 2, cap_bits);
  }
}

}  // namespace hgd
