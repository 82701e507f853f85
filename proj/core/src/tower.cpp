#include "hgd/tower.hpp"

#include "hgd/errors.hpp"
#include "hgd/quadelem.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hgd {

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

// Prime factors of |n| (without multiplicity), ascending.
std::vector<BigInt> prime_factors(BigInt n) {
  std::vector<BigInt> out;
  n = abs(n);
  for (BigInt p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
    if (p > 10000000) break;
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) throw ResourceError("could not factor " + to_string(n));
    out.push_back(n);
  }
  return out;
}

int legendre(long a, long p) {
  long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  long acc = 1, base = r, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

bool all_zero(const BigRational* a, int n) {
  for (int i = 0; i < n; ++i)
    if (!a[i].is_zero()) return false;
  return true;
}

std::string rat_str(const BigRational& q) { return q.str(); }

}  // namespace

long quadratic_conductor(const BigInt& d) {
  BigInt r = ((d % 4) + 4) % 4;
  BigInt m = abs(d);
  if (r != 1) m *= 4;
  if (!m.fits_slong_p()) throw UnsupportedError("quadratic conductor too large");
  return m.get_si();
}

ComplexInterval GeneratorValue::enclose(mpfr_prec_t prec) const {
  ComplexInterval w = ComplexInterval::root_of_unity(unity_power, unity_order, prec);
  if (root_index == 1 && radicand == BigRational(1)) return w;
  Interval r(radicand, prec);
  if (root_index > 1) r = r.rootn(static_cast<unsigned long>(root_index));
  return {w.re * r, w.im * r};
}

TowerPtr Tower::create(long conductor, std::vector<Level> levels) {
  if (conductor < 1) throw DomainError("tower conductor must be positive");
  std::shared_ptr<Tower> t(new Tower());
  t->conductor_ = conductor;
  if (conductor > 2) {
    t->phi_ = hgd::cyclotomic(conductor);
    t->base_degree_ = t->phi_.degree();
  } else {
    t->conductor_ = 1;
    t->base_degree_ = 1;
  }
  int n = t->base_degree_;
  long span = std::max<long>(t->conductor_, 2L * n);
  t->zeta_powers_.resize(static_cast<std::size_t>(span));
  std::vector<BigRational> cur(n, BigRational(0));
  cur[0] = 1;
  for (long k = 0; k < span; ++k) {
    t->zeta_powers_[k] = cur;
    if (n == 1) continue;
    // multiply by zeta and reduce with phi
    std::vector<BigRational> next(n, BigRational(0));
    BigRational top = cur[n - 1];
    for (int i = n - 1; i >= 1; --i) next[i] = cur[i - 1];
    if (!top.is_zero())
      for (int i = 0; i < n; ++i) next[i] -= top * BigRational(t->phi_.coeff(i));
    cur = std::move(next);
  }
  t->sizes_.push_back(n);
  for (auto& lv : levels) {
    if (lv.e < 2) throw DomainError("tower level exponent must be at least 2");
    if (static_cast<int>(lv.kappa.size()) != t->sizes_.back())
      throw DomainError("tower level radicand has the wrong dimension");
    t->sizes_.push_back(t->sizes_.back() * lv.e);
    if (t->sizes_.back() > 4096) throw UnsupportedError("tower degree too large");
  }
  t->levels_ = std::move(levels);
  return t;
}

TowerPtr Tower::multiquadratic(const std::vector<BigInt>& generators) {
  std::vector<Level> levels;
  for (const auto& g : generators) {
    Level lv;
    lv.e = 2;
    lv.kappa.assign(std::size_t{1} << levels.size(), BigRational(0));
    lv.kappa[0] = BigRational(g);
    if (g == -1) {
      lv.value = GeneratorValue{4, 1, 1, 1};
      lv.name = "i";
    } else {
      if (g <= 1) throw DomainError("multiquadratic generator must be -1 or a prime");
      lv.value = GeneratorValue{1, 0, BigRational(g), 2};
      lv.name = "sqrt(" + to_string(g) + ")";
    }
    levels.push_back(std::move(lv));
  }
  return create(1, std::move(levels));
}

bool Tower::is_multiquadratic() const {
  if (conductor_ != 1) return false;
  for (const auto& lv : levels_)
    if (lv.e != 2) return false;
  return true;
}

std::string Tower::describe() const {
  std::vector<std::string> parts;
  if (conductor_ > 1) parts.push_back("zeta_" + std::to_string(conductor_));
  for (const auto& lv : levels_) parts.push_back(lv.name);
  if (parts.empty()) return "Q";
  std::string s = "Q(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
  return s + ")";
}

bool Tower::same_as(const Tower& other) const {
  return this == &other || (conductor_ == other.conductor_ && levels_ == other.levels_);
}

std::vector<BigRational> Tower::multiply_at(std::size_t level, const BigRational* a, const BigRational* b) const {
  if (level == 0) {
    int n = base_degree_;
    if (n == 1) return {a[0] * b[0]};
    std::vector<BigRational> prod(2 * n - 1, BigRational(0));
    for (int i = 0; i < n; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!b[j].is_zero()) prod[i + j] += a[i] * b[j];
    }
    std::vector<BigRational> out(prod.begin(), prod.begin() + n);
    for (int k = n; k < 2 * n - 1; ++k) {
      if (prod[k].is_zero()) continue;
      const auto& red = zeta_powers_[k];
      for (int j = 0; j < n; ++j)
        if (!red[j].is_zero()) out[j] += prod[k] * red[j];
    }
    return out;
  }
  const Level& lv = levels_[level - 1];
  int s = sizes_[level - 1];
  int e = lv.e;
  std::vector<std::vector<BigRational>> blocks(2 * e - 1);
  for (int i = 0; i < e; ++i) {
    if (all_zero(a + i * s, s)) continue;
    for (int j = 0; j < e; ++j) {
      if (all_zero(b + j * s, s)) continue;
      auto p = multiply_at(level - 1, a + i * s, b + j * s);
      auto& dst = blocks[i + j];
      if (dst.empty()) {
        dst = std::move(p);
      } else {
        for (int k = 0; k < s; ++k) dst[k] += p[k];
      }
    }
  }
  bool kappa_rational = all_zero(lv.kappa.data() + 1, s - 1);
  for (int k = 2 * e - 2; k >= e; --k) {
    if (blocks[k].empty()) continue;
    std::vector<BigRational> red;
    if (kappa_rational) {
      red = blocks[k];
      for (auto& x : red) x *= lv.kappa[0];
    } else {
      red = multiply_at(level - 1, lv.kappa.data(), blocks[k].data());
    }
    auto& dst = blocks[k - e];
    if (dst.empty()) {
      dst = std::move(red);
    } else {
      for (int i = 0; i < s; ++i) dst[i] += red[i];
    }
  }
  std::vector<BigRational> out(static_cast<std::size_t>(s) * e, BigRational(0));
  for (int k = 0; k < e; ++k)
    if (!blocks[k].empty()) std::copy(blocks[k].begin(), blocks[k].end(), out.begin() + k * s);
  return out;
}

std::vector<BigRational> Tower::multiply(const std::vector<BigRational>& a, const std::vector<BigRational>& b) const {
  return multiply_at(levels_.size(), a.data(), b.data());
}

std::vector<ComplexInterval> Tower::basis_values(mpfr_prec_t prec) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = basis_cache_.find(prec);
    if (it != basis_cache_.end()) return it->second;
  }
  std::vector<ComplexInterval> vals;
  ComplexInterval one = ComplexInterval::real(Interval(BigRational(1), prec));
  vals.push_back(one);
  if (base_degree_ > 1) {
    ComplexInterval z = ComplexInterval::root_of_unity(1, conductor_, prec);
    for (int k = 1; k < base_degree_; ++k) vals.push_back(vals.back() * z);
  }
  for (const auto& lv : levels_) {
    ComplexInterval y = lv.value.enclose(prec);
    std::size_t s = vals.size();
    ComplexInterval yk = one;
    for (int k = 1; k < lv.e; ++k) {
      yk = yk * y;
      for (std::size_t i = 0; i < s; ++i) vals.push_back(vals[i] * yk);
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  basis_cache_[prec] = vals;
  return vals;
}

TowerElem::TowerElem(TowerPtr tower, std::vector<BigRational> coords) : tower_(std::move(tower)), c_(std::move(coords)) {
  if (!tower_) throw DomainError("tower element without a tower");
  if (static_cast<int>(c_.size()) < tower_->degree()) c_.resize(tower_->degree(), BigRational(0));
  if (static_cast<int>(c_.size()) != tower_->degree()) throw DomainError("tower element has the wrong dimension");
}

TowerElem TowerElem::zero(const TowerPtr& t) { return TowerElem(t, std::vector<BigRational>(t->degree(), BigRational(0))); }

TowerElem TowerElem::rational(const TowerPtr& t, const BigRational& q) {
  TowerElem r = zero(t);
  r.c_[0] = q;
  return r;
}

TowerElem TowerElem::basis(const TowerPtr& t, std::size_t index) {
  TowerElem r = zero(t);
  r.c_.at(index) = 1;
  return r;
}

TowerElem TowerElem::zeta(const TowerPtr& t) {
  if (t->base_degree() == 1) {
    if (t->conductor() == 1) return one(t);
    return rational(t, -1);
  }
  return basis(t, 1);
}

TowerElem TowerElem::generator(const TowerPtr& t, std::size_t level) {
  return basis(t, static_cast<std::size_t>(t->size_below(level)));
}

bool TowerElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const BigRational& x) { return x.is_zero(); });
}

bool TowerElem::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const BigRational& x) { return x.is_zero(); });
}

bool TowerElem::is_integer() const { return is_rational() && c_[0].is_integer(); }

BigRational TowerElem::rational_value() const {
  if (!is_rational()) throw DomainError("tower element is not rational");
  return c_[0];
}

static void check_same(const TowerElem& a, const TowerElem& b) {
  if (!a.tower() || !b.tower() || !a.tower()->same_as(*b.tower()))
    throw DomainError("tower elements live in different fields");
}

TowerElem operator+(const TowerElem& a, const TowerElem& b) {
  check_same(a, b);
  std::vector<BigRational> c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return TowerElem(a.tower_, std::move(c));
}

TowerElem operator-(const TowerElem& a) {
  std::vector<BigRational> c = a.c_;
  for (auto& x : c) x = -x;
  return TowerElem(a.tower_, std::move(c));
}

TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a + (-b); }

TowerElem operator*(const TowerElem& a, const TowerElem& b) {
  check_same(a, b);
  if (a.is_rational()) return b * a.c_[0];
  if (b.is_rational()) return a * b.c_[0];
  return TowerElem(a.tower_, a.tower_->multiply(a.c_, b.c_));
}

TowerElem operator*(const TowerElem& a, const BigRational& q) {
  std::vector<BigRational> c = a.c_;
  for (auto& x : c) x *= q;
  return TowerElem(a.tower_, std::move(c));
}

TowerElem operator+(const TowerElem& a, const BigRational& q) {
  TowerElem r = a;
  r.c_[0] += q;
  return r;
}

TowerElem operator/(const TowerElem& a, const TowerElem& b) { return a * b.inverse(); }

bool operator==(const TowerElem& a, const TowerElem& b) {
  check_same(a, b);
  return a.c_ == b.c_;
}

TowerElem TowerElem::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in a number field");
  if (is_rational()) return rational(tower_, c_[0].inverse());
  const int n = tower_->degree();
  // Solve (this * x = 1) with the multiplication matrix.
  std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n + 1, BigRational(0)));
  for (int j = 0; j < n; ++j) {
    TowerElem col = *this * basis(tower_, j);
    for (int i = 0; i < n; ++i) m[i][j] = col.c_[i];
  }
  m[0][n] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw DomainError("singular multiplication matrix (tower is not a field)");
    std::swap(m[piv], m[col]);
    BigRational inv = m[col][col].inverse();
    for (int k = col; k <= n; ++k) m[col][k] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      BigRational f = m[r][col];
      for (int k = col; k <= n; ++k)
        if (!m[col][k].is_zero()) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<BigRational> x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n];
  return TowerElem(tower_, std::move(x));
}

TowerElem TowerElem::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  TowerElem result = one(tower_);
  TowerElem base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

ComplexInterval TowerElem::embed(mpfr_prec_t prec) const {
  auto vals = tower_->basis_values(prec);
  ComplexInterval acc(prec);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    Interval q(c_[i], prec);
    acc = acc + ComplexInterval{vals[i].re * q, vals[i].im * q};
  }
  return acc;
}

std::string TowerElem::str() const {
  std::vector<std::string> names;
  const Tower& t = *tower_;
  for (int i = 0; i < t.degree(); ++i) {
    int idx = i;
    std::string name;
    int b = idx % t.base_degree();
    idx /= t.base_degree();
    if (b > 0) name = "zeta_" + std::to_string(t.conductor()) + (b > 1 ? "^" + std::to_string(b) : "");
    for (const auto& lv : t.levels()) {
      int k = idx % lv.e;
      idx /= lv.e;
      if (k == 0) continue;
      std::string f = lv.name + (k > 1 ? "^" + std::to_string(k) : "");
      name = name.empty() ? f : name + "*" + f;
    }
    names.push_back(name);
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    BigRational c = c_[i];
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    BigRational a = c.abs();
    if (names[i].empty()) {
      os << rat_str(a);
    } else if (a == BigRational(1)) {
      os << names[i];
    } else {
      os << rat_str(a) << "*" << names[i];
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// Principal square root of v, where v is -1, 2, -2 or p* = (-1)^((p-1)/2) p.
// Sign is not normalised here.
std::optional<TowerElem> basic_sqrt(const TowerPtr& t, const BigInt& v) {
  for (std::size_t j = 0; j < t->levels().size(); ++j) {
    const auto& lv = t->levels()[j];
    if (lv.e != 2) continue;
    bool rational = std::all_of(lv.kappa.begin() + 1, lv.kappa.end(), [](const BigRational& x) { return x.is_zero(); });
    if (rational && lv.kappa[0] == BigRational(v)) {
      // Level generator of a level above the first lives in the full tower.
      return TowerElem::generator(t, j);
    }
  }
  long M = t->conductor();
  auto z = [&](long k) {
    long kk = ((k % M) + M) % M;
    return TowerElem(t, std::vector<BigRational>(t->zeta_powers()[kk].begin(), t->zeta_powers()[kk].end()));
  };
  if (M > 2) {
    if (v == -1 && M % 4 == 0) return z(M / 4);
    if (v == 2 && M % 8 == 0) return z(M / 8) + z(-M / 8);
    if (v == -2 && M % 8 == 0) return z(M / 8) + z(3 * M / 8);
    if (abs(v) > 2 && v.fits_slong_p()) {
      long p = std::labs(v.get_si());
      if (M % p == 0) {
        TowerElem g = TowerElem::zero(t);
        for (long a = 1; a < p; ++a) {
          TowerElem term = z(a * (M / p));
          g = legendre(a, p) > 0 ? g + term : g - term;
        }
        long pstar = (p % 4 == 1) ? p : -p;
        if (v == pstar) return g;
        if (M % 4 == 0) return g * z(M / 4);
      }
    }
  }
  if (v < 0 && v != -1) {
    auto a = basic_sqrt(t, BigInt(-1));
    auto b = basic_sqrt(t, -v);
    if (a && b) return *a * *b;
  }
  return std::nullopt;
}

}  // namespace

TowerElem sqrt_in(const TowerPtr& t, const BigInt& d) {
  if (d == 0) return TowerElem::zero(t);
  BigInt s;
  BigInt core = squarefree_part(d, &s);
  TowerElem r = TowerElem::rational(t, BigRational(s));
  if (core != 1) {
    auto primes = prime_factors(core);
    // First with positive primes, then with discriminant-style p* = +-p.
    std::optional<TowerElem> found;
    for (int attempt = 0; attempt < 2 && !found; ++attempt) {
      TowerElem acc = TowerElem::one(t);
      BigInt rest = core;
      bool ok = true;
      for (const auto& p : primes) {
        BigInt v = p;
        if (attempt == 1 && p != 2 && p % 4 == 3) v = -p;
        auto f = basic_sqrt(t, v);
        if (!f) {
          ok = false;
          break;
        }
        acc = acc * *f;
        rest /= v;
      }
      if (ok && rest == -1) {
        auto f = basic_sqrt(t, BigInt(-1));
        if (f) acc = acc * *f;
        else ok = false;
      }
      if (ok) found = acc;
    }
    if (!found) throw UnsupportedError("sqrt(" + to_string(d) + ") is not representable in " + t->describe());
    r = r * *found;
  }
  TowerElem sq = r * r;
  if (!(sq == TowerElem::rational(t, BigRational(d)))) throw DomainError("internal error: square root check failed");
  ComplexInterval v = r.embed(96);
  bool flip = d > 0 ? v.re.negative() : v.im.negative();
  if (d > 0 ? !(v.re.positive() || v.re.negative()) : !(v.im.positive() || v.im.negative()))
    throw DomainError("internal error: square root sign undetermined");
  return flip ? -r : r;
}

TowerElem root_of_unity_in(const TowerPtr& t, long n, long k) {
  if (n <= 0) throw DomainError("root of unity order must be positive");
  k = ((k % n) + n) % n;
  long g = std::gcd(k, n);
  if (k == 0) return TowerElem::one(t);
  n /= g;
  k /= g;
  if (n == 2) return TowerElem::rational(t, -1);
  long M = t->conductor();
  std::optional<TowerElem> r;
  auto z = [&](long j) {
    long kk = ((j % M) + M) % M;
    return TowerElem(t, t->zeta_powers()[kk]);
  };
  if (M > 2 && M % n == 0) {
    r = z(k * (M / n));
  } else if (M > 2 && M % 2 == 1 && (2 * M) % n == 0) {
    long j = k * (2 * M / n);
    r = (j % 2 == 0) ? z(j / 2) : -z((j + M) / 2);
  } else if (24 % n == 0) {
    long m = k * (24 / n) % 24;
    TowerElem acc = TowerElem::one(t);
    long e8 = 3 * m % 8;
    long e3 = 2 * m % 3;
    if (e8 != 0) {
      TowerElem i = sqrt_in(t, BigInt(-1));
      if (e8 % 2 == 1) {
        TowerElem z8 = (sqrt_in(t, BigInt(2)) + sqrt_in(t, BigInt(-2))) * BigRational(1, 2);
        acc = z8 * i.pow((e8 - 1) / 2);
      } else {
        acc = i.pow(e8 / 2);
      }
    }
    if (e3 != 0) {
      TowerElem z3 = (sqrt_in(t, BigInt(-3)) + BigRational(-1)) * BigRational(1, 2);
      acc = acc * z3.pow(e3);
    }
    r = acc;
  } else {
    throw UnsupportedError("zeta_" + std::to_string(n) + " is not in " + t->describe());
  }
  ComplexInterval want = ComplexInterval::root_of_unity(k, n, 96);
  ComplexInterval got = r->embed(96);
  ComplexInterval diff = got - want;
  if (!(diff.re.abs() - Interval(BigRational(1, 1000000), 96)).negative() ||
      !(diff.im.abs() - Interval(BigRational(1, 1000000), 96)).negative())
    throw DomainError("internal error: root of unity embedding mismatch");
  return *r;
}

namespace {

// sigma on an element of the field below `level` (levels < level used).
TowerElem apply_partial(const TowerAutomorphism& s, const TowerPtr& t, const BigRational* c, std::size_t level) {
  if (level == 0) {
    TowerElem out = TowerElem::zero(t);
    int n = t->base_degree();
    long M = t->conductor();
    std::vector<BigRational> acc(n, BigRational(0));
    for (int b = 0; b < n; ++b) {
      if (c[b].is_zero()) continue;
      long idx = (n == 1) ? 0 : (static_cast<long>(b) * s.a) % M;
      const auto& red = t->zeta_powers()[idx];
      for (int j = 0; j < n; ++j)
        if (!red[j].is_zero()) acc[j] += c[b] * red[j];
    }
    return TowerElem(t, std::move(acc));
  }
  int sz = t->size_below(level - 1);
  int e = t->levels()[level - 1].e;
  TowerElem y = TowerElem::generator(t, level - 1);
  TowerElem image = s.eta[level - 1] * y;
  TowerElem acc = TowerElem::zero(t);
  TowerElem pw = TowerElem::one(t);
  for (int k = 0; k < e; ++k) {
    if (!all_zero(c + k * sz, sz)) acc = acc + apply_partial(s, t, c + k * sz, level - 1) * pw;
    if (k + 1 < e) pw = pw * image;
  }
  return acc;
}

}  // namespace

TowerElem apply(const TowerAutomorphism& s, const TowerElem& x) {
  const auto& t = x.tower();
  return apply_partial(s, t, x.coords().data(), t->levels().size());
}

std::vector<TowerAutomorphism> automorphisms(const TowerPtr& t) {
  long M = t->conductor();
  std::vector<long> units;
  if (M <= 2) {
    units.push_back(1);
  } else {
    for (long a = 1; a < M; ++a)
      if (std::gcd(a, M) == 1) units.push_back(a);
  }
  std::vector<TowerElem> unities;
  if (M <= 2) {
    unities = {TowerElem::one(t), TowerElem::rational(t, -1)};
  } else {
    for (long k = 0; k < M; ++k) unities.push_back(TowerElem(t, t->zeta_powers()[k]));
    if (M % 2 == 1)
      for (long k = 0; k < M; ++k) unities.push_back(-TowerElem(t, t->zeta_powers()[k]));
  }
  std::vector<TowerAutomorphism> out;
  const std::size_t L = t->levels().size();
  for (long a : units) {
    std::vector<TowerAutomorphism> partial{TowerAutomorphism{a, {}}};
    for (std::size_t j = 0; j < L; ++j) {
      const auto& lv = t->levels()[j];
      std::vector<TowerAutomorphism> next;
      std::vector<BigRational> kappa_full = lv.kappa;
      kappa_full.resize(t->degree(), BigRational(0));
      TowerElem kappa(t, kappa_full);
      for (const auto& s : partial) {
        TowerElem sk = apply_partial(s, t, kappa_full.data(), j);
        for (const auto& eta : unities) {
          if (eta.pow(lv.e) * kappa == sk) {
            TowerAutomorphism ext = s;
            ext.eta.push_back(eta);
            next.push_back(std::move(ext));
          }
        }
      }
      partial = std::move(next);
    }
    for (auto& s : partial) out.push_back(std::move(s));
  }
  if (static_cast<int>(out.size()) != t->degree())
    throw UnsupportedError("tower " + t->describe() + " is not Galois over Q");
  return out;
}

void TowerRequest::merge(const TowerRequest& other) {
  quadratics.insert(other.quadratics.begin(), other.quadratics.end());
  unity_orders.insert(other.unity_orders.begin(), other.unity_orders.end());
  need_i = need_i || other.need_i;
  if (other.radical) {
    if (radical && *radical != *other.radical) {
      auto a = reduce_radical(radical->first, radical->second);
      auto b = reduce_radical(other.radical->first, other.radical->second);
      if (a.c_prime != b.c_prime || a.d_prime != b.d_prime)
        throw UnsupportedError("two distinct radical extensions are not supported");
      // Same real radical; keep the one with the larger root-of-unity needs.
      unity_orders.insert(other.radical->first * (other.radical->second < 0 ? 2 : 1));
    } else if (!radical) {
      radical = other.radical;
    }
  }
}

RadicalReduction reduce_radical(long d, const BigInt& a) {
  if (d < 1 || a == 0) throw DomainError("invalid radical");
  BigInt c = abs(a);
  for (long g = d; g >= 1; --g) {
    if (d % g != 0) continue;
    BigInt root;
    if (mpz_root(root.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(g)) != 0)
      return RadicalReduction{root, d / g};
  }
  return RadicalReduction{c, d};
}

TowerPtr build_tower(const TowerRequest& req_in) {
  TowerRequest req = req_in;
  std::optional<RadicalReduction> rad;
  if (req.radical) {
    auto [d, a] = *req.radical;
    req.unity_orders.insert(a > 0 ? d : 2 * d);
    RadicalReduction r = reduce_radical(d, a);
    if (r.d_prime > 1) {
      rad = r;
      if (r.d_prime % 2 == 0) req.quadratics.insert(squarefree_part(r.c_prime));
    }
  }
  std::set<BigInt> quads;
  for (const auto& d : req.quadratics) {
    BigInt core = squarefree_part(d);
    if (core != 1) quads.insert(core);
  }
  bool small_orders = std::all_of(req.unity_orders.begin(), req.unity_orders.end(), [](long n) { return 24 % n == 0; });
  if (!rad && small_orders) {
    std::set<BigInt> gens;
    bool minus_one = req.need_i;
    for (const auto& d : quads) {
      if (d < 0) minus_one = true;
      for (const auto& p : prime_factors(d)) gens.insert(p);
    }
    for (long n : req.unity_orders) {
      if (n % 4 == 0 || n % 3 == 0) minus_one = true;
      if (n % 3 == 0) gens.insert(BigInt(3));
      if (n % 8 == 0) gens.insert(BigInt(2));
    }
    std::vector<BigInt> list;
    if (minus_one) list.push_back(BigInt(-1));
    list.insert(list.end(), gens.begin(), gens.end());
    if (list.size() > 6) throw UnsupportedError("multiquadratic field of degree above 64");
    return Tower::multiquadratic(list);
  }
  long M = 1;
  for (long n : req.unity_orders) M = lcm_long(M, n);
  for (const auto& d : quads) M = lcm_long(M, quadratic_conductor(d));
  if (req.need_i) M = lcm_long(M, 4);
  if (M % 4 == 2) M /= 2;
  long base = M > 2 ? euler_phi(M) : 1;
  if (base > kMaxTowerDegree) throw UnsupportedError("cyclotomic field of degree " + std::to_string(base) + " exceeds the cap");
  if (!rad) return Tower::cyclotomic(M);
  TowerPtr b = Tower::cyclotomic(M);
  Tower::Level lv;
  if (rad->d_prime % 2 == 0) {
    lv.e = static_cast<int>(rad->d_prime / 2);
    lv.kappa = sqrt_in(b, rad->c_prime).coords();
  } else {
    lv.e = static_cast<int>(rad->d_prime);
    lv.kappa = {BigRational(rad->c_prime)};
    lv.kappa.resize(base, BigRational(0));
  }
  lv.value = GeneratorValue{1, 0, BigRational(rad->c_prime), rad->d_prime};
  lv.name = to_string(rad->c_prime) + "^(1/" + std::to_string(rad->d_prime) + ")";
  if (base * lv.e > kMaxTowerDegree) throw UnsupportedError("radical tower degree exceeds the cap");
  if (lv.e < 2) return b;
  return Tower::create(M, {lv});
}

}  // namespace hgd
