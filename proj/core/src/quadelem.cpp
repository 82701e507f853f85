#include "hgd/quadelem.hpp"

#include "hgd/errors.hpp"

namespace hgd {

namespace {

void require_same_field(const QuadElem& x, const QuadElem& y) {
  if (x.d() != y.d()) {
    throw DomainError("mismatched quadratic fields: d=" + to_string(x.d()) + " vs d=" + to_string(y.d()));
  }
}

}  // namespace

BigInt squarefree_part(const BigInt& n, BigInt* square_root_of_rest) {
  if (n == 0) throw DomainError("squarefree part of zero");
  BigInt m = abs(n);
  BigInt core = 1, root = 1;
  // Trial division is adequate for the discriminant sizes accepted upstream.
  for (unsigned long p = 2; BigInt(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e % 2 == 1) core *= p;
    for (unsigned k = 0; k < e / 2; ++k) root *= p;
  }
  core *= m;  // remaining cofactor is 1 or a prime
  if (square_root_of_rest) *square_root_of_rest = root;
  return n < 0 ? BigInt(-core) : core;
}

bool is_squarefree(const BigInt& n) {
  if (n == 0) return false;
  BigInt root;
  squarefree_part(n, &root);
  return root == 1;
}

QuadElem::QuadElem(BigRational a, BigRational b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (d_ == 1 || d_ == 0) throw DomainError("quadratic context requires squarefree d not in {0, 1}");
  if (!is_squarefree(d_)) throw DomainError("d=" + to_string(d_) + " is not squarefree");
}

QuadElem QuadElem::inverse() const {
  BigRational n = norm();
  if (n.is_zero()) throw DomainError("division by zero in Q(sqrt(" + to_string(d_) + "))");
  return QuadElem(a_ / n, -b_ / n, d_);
}

QuadElem QuadElem::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  QuadElem result(1, 0, d_);
  QuadElem base = *this;
  auto e = static_cast<unsigned long>(exponent);
  while (e) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

bool QuadElem::is_algebraic_integer() const {
  if (a_.is_integer() && b_.is_integer()) return true;
  BigInt m4 = d_ % 4;
  if (m4 < 0) m4 += 4;
  if (m4 != 1) return false;
  BigRational two_a = a_ + a_, two_b = b_ + b_;
  return two_a.is_integer() && two_b.is_integer() && !a_.is_integer() && !b_.is_integer();
}

std::string QuadElem::str() const {
  if (b_.is_zero()) return a_.str();
  std::string s = a_.is_zero() ? "" : a_.str() + (b_.sign() > 0 ? " + " : " - ");
  if (a_.is_zero() && b_.sign() < 0) s += "-";
  return s + b_.abs().str() + "*sqrt(" + to_string(d_) + ")";
}

QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  return QuadElem(x.a_ + y.a_, x.b_ + y.b_, x.d_);
}

QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  return QuadElem(x.a_ - y.a_, x.b_ - y.b_, x.d_);
}

QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  BigRational d(x.d_);
  return QuadElem(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, x.d_);
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) {
  require_same_field(x, y);
  return x * y.inverse();
}

QuadElem quad_arith(QuadOp op, const QuadElem& x, const QuadElem& y) {
  switch (op) {
    case QuadOp::Add: return x + y;
    case QuadOp::Sub: return x - y;
    case QuadOp::Mul: return x * y;
    case QuadOp::Div: return x / y;
    case QuadOp::Pow:
      require_same_field(x, y);
      if (!y.is_rational() || !y.a().is_integer()) throw DomainError("exponent must be an integer");
      return x.pow(y.a().num().get_si());
  }
  throw DomainError("unknown quadratic operation");
}

QuadElem quad_arith(QuadOp op, const QuadElem& x, long exponent) {
  if (op == QuadOp::Pow) return x.pow(exponent);
  return quad_arith(op, x, QuadElem(exponent, 0, x.d()));
}

}  // namespace hgd
