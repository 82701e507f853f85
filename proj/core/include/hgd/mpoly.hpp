#pragma once

#include "hgd/bigrational.hpp"
#include "hgd/tower.hpp"

#include <map>
#include <string>
#include <vector>

namespace hgd {

// Sparse multivariate Laurent polynomial: exponent vector -> nonzero coefficient.
template <typename C>
class MPoly {
 public:
  using Exponent = std::vector<int>;

  explicit MPoly(int nvars = 0) : nvars_(nvars) {}

  int nvars() const { return nvars_; }
  const std::map<Exponent, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponent& e, const C& c) {
    if (static_cast<int>(e.size()) != nvars_) throw DomainError("exponent vector has the wrong length");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a) {
    MPoly r(a.nvars_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.nvars_);
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) {
        Exponent e(e1.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }

  // Smallest exponent of each variable across all terms (zero polynomial: all zeros).
  Exponent min_exponents() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (int i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  }
  // Multiply by the monomial with exponent `shift`.
  MPoly shifted(const Exponent& shift) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (int i = 0; i < nvars_; ++i) f[i] += shift[i];
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }
  // Divide out the largest common monomial so all exponents become >= 0 with a zero minimum.
  MPoly normalized() const {
    Exponent m = min_exponents();
    for (auto& x : m) x = -x;
    return shifted(m);
  }

  template <typename F>
  MPoly map_coefficients(F f) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

 private:
  int nvars_;
  std::map<Exponent, C> terms_;
};

using RatMPoly = MPoly<BigRational>;
using TowerMPoly = MPoly<TowerElem>;

std::string to_string(const RatMPoly& p, const std::vector<std::string>& names);
std::string to_string(const TowerMPoly& p, const std::vector<std::string>& names);

struct GaloisNormInput {
  TowerMPoly poly;
  TowerPtr tower;
};

// prod over all automorphisms of the tower of sigma(P); every coefficient of
// the product is asserted rational.
RatMPoly galois_norm_poly(const GaloisNormInput& input);

}  // namespace hgd
