#include "hgd/roots.hpp"

#include "hgd/errors.hpp"

#include <cmath>
#include <numeric>

namespace hgd {

int RootMultiset::total_multiplicity() const {
  int n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

std::optional<RootMultiset> roots_quadratic(const IntPoly& f, const EngineConfig& cfg) {
  if (f.degree() < 1) throw DomainError("roots_quadratic needs a polynomial of degree at least 1");
  if (!f.is_monic()) throw DomainError("roots_quadratic needs a monic polynomial");
  return roots_quadratic(factor_over_q(f, cfg));
}

std::optional<RootMultiset> roots_quadratic(const Factorization& fac) {
  RootMultiset out;
  std::optional<BigInt> common;
  bool mixed = false;
  for (const auto& fi : fac.factors) {
    if (fi.degree() > 2) return std::nullopt;
    if (fi.degree() == 2) {
      if (!fi.poly.is_monic()) throw DomainError("roots_quadratic needs monic factors");
      if (common && *common != fi.disc_core) mixed = true;
      common = fi.disc_core;
    }
  }
  BigInt ctx = common ? *common : BigInt(-1);
  for (const auto& fi : fac.factors) {
    if (fi.degree() == 1) {
      out.entries.push_back({QuadElem::rational(fi.linear_root, ctx), fi.multiplicity});
      continue;
    }
    BigRational b(fi.poly.coeff(1)), c(fi.poly.coeff(0));
    BigRational a = -b / BigRational(2);
    BigRational s = BigRational(fi.disc_scale) / BigRational(2);
    QuadElem r1(a, s, fi.disc_core), r2(a, -s, fi.disc_core);
    if (!(r1 + r2 == QuadElem::rational(-b, fi.disc_core)) || !(r1 * r2 == QuadElem::rational(c, fi.disc_core)))
      throw DomainError("internal error: quadratic root verification failed");
    if (!r1.is_algebraic_integer()) throw DomainError("internal error: root of a monic quadratic is not integral");
    out.entries.push_back({r1, fi.multiplicity});
    out.entries.push_back({r2, fi.multiplicity});
  }
  out.field_d = mixed ? BigInt(0) : ctx;
  return out;
}

TowerRequest tower_request(const FactorInfo& fi) {
  TowerRequest r;
  switch (fi.shape) {
    case FactorShape::Linear:
      break;
    case FactorShape::Quadratic:
      r.quadratics.insert(fi.disc_core);
      break;
    case FactorShape::Cyclotomic:
      r.unity_orders.insert(fi.order);
      break;
    case FactorShape::Radical:
      r.radical = std::make_pair(fi.order, fi.radicand);
      break;
    case FactorShape::Biquadratic:
      for (int k = 0; k < 3; ++k)
        if (fi.biquad.core[k] != 0) r.quadratics.insert(fi.biquad.core[k]);
      break;
    case FactorShape::Other:
      throw UnsupportedError("roots of " + fi.poly.str() + " lie outside the supported tower families");
  }
  return r;
}

TowerRequest tower_request(const Factorization& fac) {
  TowerRequest r;
  for (const auto& fi : fac.factors) r.merge(tower_request(fi));
  return r;
}

namespace {

std::vector<TowerElem> candidate_roots(const FactorInfo& fi, const TowerPtr& t) {
  std::vector<TowerElem> out;
  switch (fi.shape) {
    case FactorShape::Linear:
      out.push_back(TowerElem::rational(t, fi.linear_root));
      break;
    case FactorShape::Quadratic: {
      BigRational lead(fi.poly.coeff(2));
      BigRational a = -BigRational(fi.poly.coeff(1)) / (lead * BigRational(2));
      TowerElem s = sqrt_in(t, fi.disc_core) * (BigRational(fi.disc_scale) / (lead * BigRational(2)));
      out.push_back(s + a);
      out.push_back(-s + a);
      break;
    }
    case FactorShape::Cyclotomic:
      for (long k = 1; k <= fi.order; ++k)
        if (std::gcd(k, fi.order) == 1) out.push_back(root_of_unity_in(t, fi.order, k) + BigRational(fi.shift));
      break;
    case FactorShape::Radical: {
      long d = fi.order;
      RadicalReduction rr = reduce_radical(d, fi.radicand);
      std::optional<TowerElem> beta;
      if (rr.d_prime == 1) {
        beta = TowerElem::rational(t, BigRational(rr.c_prime));
      } else if (rr.d_prime == 2) {
        beta = sqrt_in(t, rr.c_prime);
      } else {
        for (std::size_t j = 0; j < t->levels().size(); ++j) {
          const auto& v = t->levels()[j].value;
          if (v.unity_power == 0 && v.radicand == BigRational(rr.c_prime) && v.root_index == rr.d_prime)
            beta = TowerElem::generator(t, j);
        }
      }
      if (!beta) throw UnsupportedError("radical root of " + fi.poly.str() + " not available in " + t->describe());
      for (long k = 0; k < d; ++k) {
        TowerElem w = fi.radicand > 0 ? root_of_unity_in(t, d, k) : root_of_unity_in(t, 2 * d, 2 * k + 1);
        out.push_back(*beta * w + BigRational(fi.shift));
      }
      break;
    }
    case FactorShape::Biquadratic: {
      const auto& bd = fi.biquad;
      TowerElem sig[3];
      for (int k = 0; k < 3; ++k) {
        sig[k] = bd.core[k] == 0 ? TowerElem::zero(t)
                                 : sqrt_in(t, bd.core[k]) * BigRational(bd.scale[k] * bd.sign[k]);
      }
      static const int pattern[4][3] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      for (const auto& pt : pattern) {
        TowerElem r = TowerElem::rational(t, BigRational(bd.trace));
        for (int k = 0; k < 3; ++k) r = pt[k] > 0 ? r + sig[k] : r - sig[k];
        out.push_back(r * BigRational(1, 4));
      }
      break;
    }
    case FactorShape::Other:
      throw UnsupportedError("roots of " + fi.poly.str() + " lie outside the supported tower families");
  }
  return out;
}

}  // namespace

std::vector<TowerElem> roots_in_tower(const FactorInfo& fi, const TowerPtr& t) {
  std::vector<TowerElem> cand = candidate_roots(fi, t);
  if (static_cast<int>(cand.size()) != fi.degree()) throw DomainError("internal error: wrong number of tower roots");
  // exact check: lead * prod (x - r) == poly
  std::vector<TowerElem> prod{TowerElem::rational(t, BigRational(fi.poly.lead()))};
  for (const auto& r : cand) {
    std::vector<TowerElem> next(prod.size() + 1, TowerElem::zero(t));
    for (std::size_t k = 0; k < prod.size(); ++k) {
      next[k + 1] = next[k + 1] + prod[k];
      next[k] = next[k] - prod[k] * r;
    }
    prod = std::move(next);
  }
  for (std::size_t k = 0; k < prod.size(); ++k) {
    if (!(prod[k] == TowerElem::rational(t, BigRational(fi.poly.coeff(k)))))
      throw DomainError("internal error: tower roots do not reproduce " + fi.poly.str());
  }
  if (fi.roots.size() != cand.size()) return cand;
  // order like the numeric roots
  std::vector<TowerElem> ordered(cand.size());
  std::vector<bool> used(cand.size(), false);
  for (const auto& c : cand) {
    ComplexInterval v = c.embed(128);
    double x = v.re.mid_double(), y = v.im.mid_double();
    std::size_t best = cand.size();
    double best_d = 0;
    for (std::size_t j = 0; j < fi.roots.size(); ++j) {
      double d = std::hypot(fi.roots[j].re.to_double() - x, fi.roots[j].im.to_double() - y);
      if (best == cand.size() || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (used[best] || best_d > 1e-9 * (1 + std::hypot(x, y)))
      throw DomainError("internal error: cannot align tower roots with numeric roots of " + fi.poly.str());
    used[best] = true;
    ordered[best] = c;
  }
  return ordered;
}

}  // namespace hgd
