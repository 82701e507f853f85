#include "hgd/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace hgd {

namespace {

template <typename T>
std::string coeff_str(const T& c) {
  if constexpr (std::is_same_v<T, BigRational>) {
    return c.str();
  } else {
    return to_string(c);
  }
}

template <typename T>
bool is_one(const T& c) {
  return c == T(1);
}

template <typename T>
int sgn_of(const T& c) {
  if constexpr (std::is_same_v<T, BigRational>) {
    return c.sign();
  } else {
    return sgn(c);
  }
}

}  // namespace

template <typename T>
std::string Polynomial<T>::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const T& c = c_[static_cast<std::size_t>(i)];
    if (c == T(0)) continue;
    T mag = sgn_of(c) < 0 ? T(-c) : c;
    if (out.empty()) {
      if (sgn_of(c) < 0) out += "-";
    } else {
      out += sgn_of(c) < 0 ? " - " : " + ";
    }
    if (i == 0 || !is_one(mag)) {
      out += coeff_str(mag);
      if (i > 0) out += "*";
    }
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

template class Polynomial<BigInt>;
template class Polynomial<BigRational>;

RatPoly to_rat(const IntPoly& f) {
  std::vector<BigRational> v;
  v.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) v.emplace_back(c);
  return RatPoly(std::move(v));
}

IntPoly to_int(const RatPoly& f) {
  std::vector<BigInt> v;
  for (const auto& c : f.coeffs()) {
    if (!c.is_integer()) throw DomainError("polynomial has a non-integer coefficient");
    v.push_back(c.num());
  }
  return IntPoly(std::move(v));
}

BigInt content(const IntPoly& f) {
  BigInt g = 0;
  for (const auto& c : f.coeffs()) g = gcd(g, c);
  return g;
}

IntPoly primitive_part(const RatPoly& f) {
  if (f.is_zero()) return IntPoly();
  BigInt den = 1;
  for (const auto& c : f.coeffs()) den = lcm(den, c.den());
  std::vector<BigInt> v;
  for (const auto& c : f.coeffs()) v.push_back((c * BigRational(den)).num());
  IntPoly p(std::move(v));
  BigInt g = content(p);
  if (sgn(p.lead()) < 0) g = -g;
  std::vector<BigInt> w;
  for (const auto& c : p.coeffs()) w.push_back(c / g);
  return IntPoly(std::move(w));
}

RatPoly make_monic(const RatPoly& f) {
  if (f.is_zero()) return f;
  return f.scaled(f.lead().inverse());
}

std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<BigRational> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  std::vector<BigRational> q(static_cast<std::size_t>(a.degree() - db + 1), BigRational(0));
  BigRational inv = b.lead().inverse();
  for (int i = a.degree(); i >= db; --i) {
    BigRational c = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) {
      r[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly r = divrem(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = divrem(to_rat(a), to_rat(b));
  if (!r.is_zero()) throw DomainError("polynomial division is not exact");
  return to_int(q);
}

bool divides(const IntPoly& b, const IntPoly& a) {
  auto [q, r] = divrem(to_rat(a), to_rat(b));
  if (!r.is_zero()) return false;
  for (const auto& c : q.coeffs()) {
    if (!c.is_integer()) return false;
  }
  return true;
}

std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f) {
  std::vector<std::pair<RatPoly, int>> out;
  if (f.degree() <= 0) return out;
  RatPoly fm = make_monic(f);
  RatPoly d = fm.derivative();
  RatPoly a = gcd(fm, d);
  RatPoly b = divrem(fm, a).first;
  RatPoly c = divrem(d, a).first;
  RatPoly e = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RatPoly g = gcd(b, e);
    if (g.degree() > 0) out.emplace_back(make_monic(g), i);
    b = divrem(b, g).first;
    c = divrem(e, g).first;
    e = c - b.derivative();
    ++i;
  }
  return out;
}

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

int mobius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

IntPoly cyclotomic(long n) {
  if (n < 1) throw DomainError("cyclotomic order must be positive");
  static thread_local std::map<long, IntPoly> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly num = IntPoly::monomial(BigInt(1), static_cast<std::size_t>(n)) - IntPoly::constant(BigInt(1));
  for (long d = 1; d < n; ++d) {
    if (n % d == 0) num = exact_div(num, cyclotomic(d));
  }
  cache.emplace(n, num);
  return num;
}

BigRational cauchy_bound(const RatPoly& f) {
  if (f.degree() <= 0) return BigRational(0);
  BigRational m(0);
  BigRational lead = f.lead().abs();
  for (int i = 0; i < f.degree(); ++i) {
    BigRational r = f.coeffs()[static_cast<std::size_t>(i)].abs() / lead;
    if (r > m) m = r;
  }
  BigRational cauchy = m + BigRational(1);
  // Fujiwara: |z| <= 2 max_i |a_{n-i}/a_n|^(1/i), with the constant term halved
  const int n = f.degree();
  BigInt r_max(0);
  for (int i = 1; i <= n; ++i) {
    BigRational c = f.coeffs()[static_cast<std::size_t>(n - i)].abs() / lead;
    if (i == n) c = c / BigRational(2);
    if (c.is_zero()) continue;
    BigInt k = c.ceil();
    BigInt r;
    mpz_root(r.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(i));
    BigInt ri;
    mpz_pow_ui(ri.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
    if (ri < k) r += 1;
    if (r > r_max) r_max = r;
  }
  BigRational fujiwara = BigRational(BigInt(2 * r_max + 1));
  return std::min(cauchy, fujiwara);
}

BigRational cauchy_bound(const IntPoly& f) { return cauchy_bound(to_rat(f)); }

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& f) {
  std::vector<RatPoly> chain;
  RatPoly g = make_monic(f);
  // squarefree part keeps the count "distinct roots"
  RatPoly gd = gcd(g, g.derivative());
  if (gd.degree() > 0) g = divrem(g, gd).first;
  chain.push_back(g);
  chain.push_back(g.derivative());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    RatPoly r = divrem(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_changes_at(const std::vector<RatPoly>& chain, const BigRational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    int s = p.eval(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const RatPoly& f, const BigRational& a, const BigRational& b) {
  if (f.degree() <= 0) return 0;
  auto chain = sturm_chain(f);
  return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

int count_negative_roots(const RatPoly& f) {
  if (f.degree() <= 0) return 0;
  BigRational B = cauchy_bound(f);
  int n = count_real_roots(f, -B, BigRational(0));
  if (f.eval(BigRational(0)).is_zero()) --n;
  return n;
}

namespace {

// sum := ['+'|'-'] product (('+'|'-') product)*
// product := power ('*'? power)*
// power := atom ('^' digits)?
// atom := digits | 'x' | 'n' | '(' sum ')'
class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : text_(text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
    for (std::size_t pos; (pos = s_.find("**")) != std::string::npos;) s_.replace(pos, 2, "^");
  }

  IntPoly parse() {
    if (s_.empty()) throw ParseError("empty polynomial");
    IntPoly f = sum();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial '" + text_ + "': " + why + " at position " + std::to_string(i_));
  }
  bool at(char c) const { return i_ < s_.size() && s_[i_] == c; }
  bool starts_atom() const {
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'n' || c == 'X' || c == '(';
  }
  std::string digits() {
    std::string d;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) d += s_[i_++];
    return d;
  }

  IntPoly sum() {
    IntPoly acc;
    bool first = true;
    while (first || at('+') || at('-')) {
      int sg = 1;
      if (at('+') || at('-')) {
        sg = s_[i_] == '-' ? -1 : 1;
        ++i_;
      }
      IntPoly term = product();
      acc = sg > 0 ? acc + term : acc - term;
      first = false;
    }
    return acc;
  }

  IntPoly product() {
    IntPoly acc = power();
    for (;;) {
      if (at('*')) {
        ++i_;
        if (!starts_atom()) fail("dangling '*'");
      } else if (!starts_atom()) {
        break;
      }
      acc = acc * power();
    }
    return acc;
  }

  IntPoly power() {
    IntPoly base = atom();
    if (!at('^')) return base;
    ++i_;
    std::string e = digits();
    if (e.empty()) fail("missing exponent");
    if (e.size() > 4) fail("exponent too large");
    return base.pow(static_cast<unsigned>(std::stoul(e)));
  }

  IntPoly atom() {
    if (i_ >= s_.size()) fail("expected a coefficient or variable");
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) return IntPoly{BigInt(digits())};
    if (c == 'x' || c == 'n' || c == 'X') {
      ++i_;
      return IntPoly::x();
    }
    if (c == '(') {
      ++i_;
      IntPoly inner = sum();
      if (!at(')')) fail("missing ')'");
      ++i_;
      return inner;
    }
    fail("expected a coefficient or variable");
  }

  std::string text_;
  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace

IntPoly parse_int_poly(const std::string& text) { return PolyParser(text).parse(); }

}  // namespace hgd
