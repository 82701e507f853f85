#pragma once

#include "hgd/bigrational.hpp"
#include "hgd/numeric.hpp"
#include "hgd/polynomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hgd {

// Complex value exp(2*pi*i*k/n) * radicand^(1/index) used to embed a generator.
struct GeneratorValue {
  long unity_order = 1;
  long unity_power = 0;
  BigRational radicand = 1;
  long root_index = 1;

  ComplexInterval enclose(mpfr_prec_t prec) const;
  bool operator==(const GeneratorValue&) const = default;
};

class TowerElem;

// Q(zeta_M) followed by pure extensions y_j^{e_j} = kappa_j, kappa_j in the
// field below level j.  Multiquadratic fields are M = 1 with e_j = 2 and
// rational kappa_j; cyclotomic fields have no levels; radical fields have a
// single level over a cyclotomic base.
class Tower : public std::enable_shared_from_this<Tower> {
 public:
  struct Level {
    int e = 2;
    std::vector<BigRational> kappa;  // coordinates in the field below
    GeneratorValue value;
    std::string name;
    bool operator==(const Level& o) const { return e == o.e && kappa == o.kappa && value == o.value; }
  };

  static std::shared_ptr<const Tower> create(long conductor, std::vector<Level> levels);
  static std::shared_ptr<const Tower> rational() { return create(1, {}); }
  static std::shared_ptr<const Tower> cyclotomic(long conductor) { return create(conductor, {}); }
  // Q(sqrt(g_1), ..., sqrt(g_k)); each g is -1 or a positive prime.
  static std::shared_ptr<const Tower> multiquadratic(const std::vector<BigInt>& generators);

  long conductor() const { return conductor_; }
  int base_degree() const { return base_degree_; }
  int degree() const { return sizes_.back(); }
  const std::vector<Level>& levels() const { return levels_; }
  int size_below(std::size_t level) const { return sizes_[level]; }
  bool is_multiquadratic() const;
  std::string describe() const;
  bool same_as(const Tower& other) const;

  // Field-specific multiplication of raw coordinate arrays.
  std::vector<BigRational> multiply(const std::vector<BigRational>& a, const std::vector<BigRational>& b) const;
  std::vector<BigRational> multiply_at(std::size_t level, const BigRational* a, const BigRational* b) const;

  // Numeric value of each basis monomial (cached per precision).
  std::vector<ComplexInterval> basis_values(mpfr_prec_t prec) const;

  const std::vector<std::vector<BigRational>>& zeta_powers() const { return zeta_powers_; }

 private:
  Tower() = default;
  long conductor_ = 1;
  int base_degree_ = 1;
  std::vector<Level> levels_;
  std::vector<int> sizes_;
  IntPoly phi_;
  std::vector<std::vector<BigRational>> zeta_powers_;  // zeta^k reduced, k < max(M, 2*phi)
  mutable std::mutex cache_mutex_;
  mutable std::map<mpfr_prec_t, std::vector<ComplexInterval>> basis_cache_;
};

using TowerPtr = std::shared_ptr<const Tower>;

class TowerElem {
 public:
  TowerElem() = default;
  TowerElem(TowerPtr tower, std::vector<BigRational> coords);
  static TowerElem zero(const TowerPtr& t);
  static TowerElem one(const TowerPtr& t) { return rational(t, 1); }
  static TowerElem rational(const TowerPtr& t, const BigRational& q);
  static TowerElem basis(const TowerPtr& t, std::size_t index);
  // Generator of the cyclotomic base (zeta_M) and of level j (y_j).
  static TowerElem zeta(const TowerPtr& t);
  static TowerElem generator(const TowerPtr& t, std::size_t level);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<BigRational>& coords() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  bool is_integer() const;
  // Requires is_rational().
  BigRational rational_value() const;

  TowerElem inverse() const;
  TowerElem pow(long n) const;
  ComplexInterval embed(mpfr_prec_t prec) const;
  std::string str() const;

  friend TowerElem operator+(const TowerElem& a, const TowerElem& b);
  friend TowerElem operator-(const TowerElem& a, const TowerElem& b);
  friend TowerElem operator*(const TowerElem& a, const TowerElem& b);
  friend TowerElem operator/(const TowerElem& a, const TowerElem& b);
  friend TowerElem operator-(const TowerElem& a);
  friend TowerElem operator*(const TowerElem& a, const BigRational& q);
  friend TowerElem operator+(const TowerElem& a, const BigRational& q);
  friend bool operator==(const TowerElem& a, const TowerElem& b);

 private:
  TowerPtr tower_;
  std::vector<BigRational> c_;
};

// Principal square root: positive for d > 0, i*sqrt(|d|) for d < 0.
// Throws UnsupportedError when sqrt(d) is not expressible in the tower.
TowerElem sqrt_in(const TowerPtr& t, const BigInt& d);
// exp(2*pi*i*k/n) in the tower, or UnsupportedError.
TowerElem root_of_unity_in(const TowerPtr& t, long n, long k);
// i, adjoined as sqrt(-1).
inline TowerElem imaginary_unit(const TowerPtr& t) { return sqrt_in(t, BigInt(-1)); }

// Automorphism: zeta_M -> zeta_M^a and y_j -> eta_j * y_j.
struct TowerAutomorphism {
  long a = 1;
  std::vector<TowerElem> eta;
};
// All automorphisms of a Galois tower; UnsupportedError when fewer than
// [K:Q] are found (the tower is then not normal over Q).
std::vector<TowerAutomorphism> automorphisms(const TowerPtr& t);
TowerElem apply(const TowerAutomorphism& s, const TowerElem& x);

// Requirements collected from polynomial factors; build_tower finds the
// smallest supported family containing all of them.
struct TowerRequest {
  std::set<BigInt> quadratics;  // squarefree d with sqrt(d) needed
  std::set<long> unity_orders;  // n with zeta_n needed
  std::optional<std::pair<long, BigInt>> radical;  // (d, a): roots of x^d - a needed
  bool need_i = false;

  void merge(const TowerRequest& other);
};

inline constexpr int kMaxTowerDegree = 64;
TowerPtr build_tower(const TowerRequest& req);

// Data of the real positive root beta = c'^{1/d'} of x^d = |a| (see build_tower).
struct RadicalReduction {
  BigInt c_prime;
  long d_prime = 1;
};
RadicalReduction reduce_radical(long d, const BigInt& a);

// Squarefree-number conductor: |d| when d = 1 mod 4, else 4|d|.
long quadratic_conductor(const BigInt& d);

}  // namespace hgd
