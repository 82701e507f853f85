#include "hgd/bigrational.hpp"

#include "hgd/errors.hpp"

#include <cctype>

namespace hgd {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  auto s = trim(text);
  if (!is_integer_literal(s)) throw ParseError("not an integer literal: '" + std::string(text) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s), 10);
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

int sign(const BigInt& value) { return sgn(value); }

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_bigint(s));
  BigInt n = parse_bigint(s.substr(0, slash));
  auto den_text = trim(s.substr(slash + 1));
  if (!den_text.empty() && den_text[0] == '-') {
    throw ParseError("denominator must be positive: '" + std::string(text) + "'");
  }
  BigInt d = parse_bigint(den_text);
  if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  return BigRational(n, d);
}

bool BigRational::is_half_integer_multiple() const {
  BigInt d = value_.get_den();
  return d == 1 || d == 2;
}

BigRational BigRational::abs() const {
  BigRational r;
  r.value_ = ::abs(value_);
  return r;
}

BigRational BigRational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  BigRational r;
  mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

BigRational BigRational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  BigRational r;
  r.value_ = mpq_class(ipow(value_.get_num(), static_cast<unsigned long>(exponent)),
                       ipow(value_.get_den(), static_cast<unsigned long>(exponent)));
  return r;
}

BigInt BigRational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

BigInt BigRational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

std::string BigRational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

}  // namespace hgd
