#include "hgd/factor.hpp"

#include "hgd/numeric_roots.hpp"
#include "hgd/quadelem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hgd {

std::string to_string(FactorShape s) {
  switch (s) {
    case FactorShape::Linear: return "linear";
    case FactorShape::Quadratic: return "quadratic";
    case FactorShape::Cyclotomic: return "cyclotomic";
    case FactorShape::Radical: return "radical";
    case FactorShape::Biquadratic: return "biquadratic";
    case FactorShape::Other: return "other";
  }
  return "?";
}

int Factorization::degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.degree() * f.multiplicity;
  return d;
}

namespace {

struct Unit {
  std::vector<std::size_t> idx;  // indices into the root array (1 or 2 conjugate roots)
};

bool near_integer(const Real& x, const Real& tol, BigInt* out) {
  BigInt n = x.round_to_integer();
  Real diff = (x - Real(BigRational(n), x.prec())).abs();
  if (diff > tol) return false;
  if (out) *out = n;
  return true;
}

// lead * prod (x - r) for the given roots, rounded to integers if close enough.
bool candidate_poly(const std::vector<Complex>& roots, const std::vector<std::size_t>& idx, const BigInt& lead,
                    const Real& tol, IntPoly* out) {
  mpfr_prec_t prec = roots.front().prec();
  std::vector<Complex> c;
  c.emplace_back(Real(BigRational(lead), prec), Real(prec));
  for (std::size_t i : idx) {
    // multiply by (x - r)
    std::vector<Complex> next(c.size() + 1, Complex(prec));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] = next[k + 1] + c[k];
      next[k] = next[k] - c[k] * roots[i];
    }
    c = std::move(next);
  }
  std::vector<BigInt> v;
  Real scale(1.0, prec);
  for (const auto& x : c) {
    Real m = x.re.abs();
    if (m > scale) scale = m;
  }
  Real t = tol * scale;
  for (const auto& x : c) {
    if (x.im.abs() > t) return false;
    BigInt n;
    if (!near_integer(x.re, t, &n)) return false;
    v.push_back(n);
  }
  *out = IntPoly(std::move(v));
  return true;
}

IntPoly primitive(const IntPoly& f) { return primitive_part(to_rat(f)); }

void factor_squarefree(const IntPoly& g, int multiplicity, const EngineConfig& cfg, std::vector<FactorInfo>& out) {
  if (g.degree() == 1) {
    FactorInfo fi;
    fi.poly = primitive(g);
    fi.multiplicity = multiplicity;
    mpfr_prec_t prec = root_precision_for(g);
    BigRational r = -BigRational(fi.poly.coeff(0)) / BigRational(fi.poly.coeff(1));
    fi.roots.emplace_back(Real(r, prec), Real(prec));
    classify_shape(fi);
    out.push_back(std::move(fi));
    return;
  }
  mpfr_prec_t prec = root_precision_for(g);
  std::vector<Complex> roots = approximate_roots(g, prec);
  Real tol(0.0, prec);
  mpfr_set_ui_2exp(tol.get(), 1, -static_cast<long>(prec) / 3, MPFR_RNDN);
  Real pair_tol(0.0, prec);
  mpfr_set_ui_2exp(pair_tol.get(), 1, -static_cast<long>(prec) / 4, MPFR_RNDN);

  // Group roots into real singletons and conjugate pairs.
  std::vector<Unit> units;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    if (roots[i].im.abs() < pair_tol) {
      roots[i].im = Real(prec);
      units.push_back({{i}});
      continue;
    }
    std::size_t best = roots.size();
    Real best_d(prec);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (used[j]) continue;
      Complex diff = roots[j] - roots[i].conj();
      Real d = diff.abs();
      if (best == roots.size() || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best == roots.size()) {
      units.push_back({{i}});
      continue;
    }
    used[best] = true;
    units.push_back({{i, best}});
  }

  BigInt lead = g.lead();
  std::vector<bool> alive(units.size(), true);
  int remaining = g.degree();
  IntPoly rest = g;
  long budget = cfg.factor_budget;

  auto emit = [&](const IntPoly& poly, const std::vector<std::size_t>& unit_ids) {
    FactorInfo fi;
    fi.poly = primitive(poly);
    fi.multiplicity = multiplicity;
    for (std::size_t u : unit_ids) {
      for (std::size_t r : units[u].idx) fi.roots.push_back(roots[r]);
      alive[u] = false;
    }
    classify_shape(fi);
    out.push_back(std::move(fi));
  };

  bool progress = true;
  while (progress && remaining > 0) {
    progress = false;
    std::vector<std::size_t> live;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (alive[u]) live.push_back(u);
    }
    BigInt rest_lead = rest.lead();
    for (int target = 1; target <= remaining / 2 && !progress; ++target) {
      std::vector<std::size_t> chosen;
      std::function<bool(std::size_t, int)> search = [&](std::size_t start, int deg) -> bool {
        if (deg == target) {
          if (--budget < 0) throw ResourceError("factorization search budget exhausted");
          std::vector<std::size_t> ridx;
          for (std::size_t u : chosen) {
            for (std::size_t r : units[u].idx) ridx.push_back(r);
          }
          // trace filter
          Complex s(prec);
          for (std::size_t r : ridx) s = s + roots[r];
          Real tr = s.re * Real(BigRational(rest_lead), prec);
          if (!near_integer(tr, tol * Real(BigRational(rest_lead), prec) * Real(4.0 + target, prec), nullptr)) {
            return false;
          }
          IntPoly cand;
          if (!candidate_poly(roots, ridx, rest_lead, tol, &cand)) return false;
          IntPoly prim = primitive(cand);
          if (prim.degree() != target || !divides(prim, rest)) return false;
          rest = exact_div(rest, prim);
          remaining -= target;
          emit(prim, chosen);
          return true;
        }
        for (std::size_t k = start; k < live.size(); ++k) {
          int d = static_cast<int>(units[live[k]].idx.size());
          if (deg + d > target) continue;
          chosen.push_back(live[k]);
          if (search(k + 1, deg + d)) return true;
          chosen.pop_back();
        }
        return false;
      };
      if (search(0, 0)) progress = true;
    }
    if (!progress && remaining > 0) {
      std::vector<std::size_t> rest_units;
      for (std::size_t u = 0; u < units.size(); ++u) {
        if (alive[u]) rest_units.push_back(u);
      }
      emit(rest, rest_units);
      remaining = 0;
    }
  }
}

}  // namespace

Factorization factor_over_q(const IntPoly& f, const EngineConfig& cfg) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  if (f.degree() > 32) throw UnsupportedError("polynomial degree " + std::to_string(f.degree()) + " exceeds the cap of 32");
  for (const auto& c : f.coeffs()) {
    if (mpz_sizeinbase(c.get_mpz_t(), 2) > 256) throw UnsupportedError("coefficient exceeds the 256-bit cap");
  }
  Factorization result;
  result.content = content(f);
  if (sgn(f.lead()) < 0) result.content = -result.content;
  if (f.degree() == 0) return result;
  for (auto& [g, mult] : squarefree_decomposition(to_rat(f))) {
    factor_squarefree(primitive_part(g), mult, cfg, result.factors);
  }
  // deterministic ordering: by degree, then coefficients
  std::stable_sort(result.factors.begin(), result.factors.end(), [](const FactorInfo& a, const FactorInfo& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto& x = a.poly.coeffs();
    const auto& y = b.poly.coeffs();
    for (std::size_t i = x.size(); i-- > 0;) {
      if (x[i] != y[i]) return x[i] < y[i];
    }
    return a.multiplicity < b.multiplicity;
  });
  return result;
}

bool is_irreducible(const IntPoly& f, const EngineConfig& cfg) {
  if (f.degree() <= 0) return false;
  auto fac = factor_over_q(f, cfg);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

std::vector<BigInt> integer_roots(const IntPoly& f) {
  std::vector<BigInt> out;
  if (f.degree() <= 0) return out;
  auto fac = factor_over_q(f);
  for (const auto& fi : fac.factors) {
    if (fi.shape == FactorShape::Linear && fi.linear_root.is_integer()) out.push_back(fi.linear_root.num());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool try_cyclotomic(FactorInfo& fi) {
  const int n = fi.degree();
  if (!fi.poly.is_monic()) return false;
  BigInt trace = -fi.poly.coeff(static_cast<std::size_t>(n - 1));
  for (long N = 1; N <= 2L * n * n + 2; ++N) {
    if (euler_phi(N) != n) continue;
    BigInt diff = trace - mobius(N);
    if (diff % n != 0) continue;
    BigInt s = diff / n;
    if (fi.poly.shift_by(s) == cyclotomic(N)) {
      fi.shape = FactorShape::Cyclotomic;
      fi.order = N;
      fi.shift = s;
      return true;
    }
  }
  return false;
}

bool try_radical(FactorInfo& fi) {
  const int n = fi.degree();
  if (!fi.poly.is_monic() || n < 3) return false;
  BigInt trace = -fi.poly.coeff(static_cast<std::size_t>(n - 1));
  if (trace % n != 0) return false;
  BigInt s = trace / n;
  IntPoly g = fi.poly.shift_by(s);
  for (int i = 1; i < n; ++i) {
    if (g.coeff(static_cast<std::size_t>(i)) != 0) return false;
  }
  if (g.coeff(0) == 0) return false;
  fi.shape = FactorShape::Radical;
  fi.order = n;
  fi.shift = s;
  fi.radicand = -g.coeff(0);
  return true;
}

bool try_biquadratic(FactorInfo& fi) {
  if (fi.degree() != 4 || !fi.poly.is_monic() || fi.roots.size() != 4) return false;
  const auto& r = fi.roots;
  mpfr_prec_t prec = r[0].prec();
  Real tol(0.0, prec);
  mpfr_set_ui_2exp(tol.get(), 1, -static_cast<long>(prec) / 3, MPFR_RNDN);
  static const int pairing[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  Complex sig[3] = {Complex(prec), Complex(prec), Complex(prec)};
  BiquadraticData bd;
  bd.trace = -fi.poly.coeff(3);
  for (int k = 0; k < 3; ++k) {
    const int* p = pairing[k];
    sig[k] = r[p[0]] + r[p[1]] - r[p[2]] - r[p[3]];
    Complex sq = sig[k] * sig[k];
    BigInt S;
    Real scale = sq.re.abs() + Real(1.0, prec);
    if (sq.im.abs() > tol * scale || !near_integer(sq.re, tol * scale, &S)) return false;
    if (S == 0) {
      bd.core[k] = 0;
      bd.scale[k] = 0;
      bd.sign[k] = 1;
      continue;
    }
    BigInt root;
    BigInt core = squarefree_part(S, &root);
    bd.core[k] = core;
    bd.scale[k] = root;
    // sig = sign * root * sqrt(core), sqrt(core) = i*sqrt(|core|) for core < 0
    if (core > 0) {
      bd.sign[k] = sig[k].re.sign() >= 0 ? 1 : -1;
    } else {
      bd.sign[k] = sig[k].im.sign() >= 0 ? 1 : -1;
    }
  }
  int nonzero = 0;
  for (int k = 0; k < 3; ++k) nonzero += bd.core[k] != 0;
  if (nonzero < 2) return false;
  fi.shape = FactorShape::Biquadratic;
  fi.biquad = bd;
  return true;
}

}  // namespace

void classify_shape(FactorInfo& fi) {
  const int n = fi.degree();
  if (n == 1) {
    fi.shape = FactorShape::Linear;
    fi.linear_root = -BigRational(fi.poly.coeff(0)) / BigRational(fi.poly.coeff(1));
    return;
  }
  if (n == 2 && fi.poly.is_monic()) {
    BigInt b = fi.poly.coeff(1), c = fi.poly.coeff(0);
    BigInt disc = b * b - 4 * c;
    BigInt root;
    fi.disc_core = squarefree_part(disc, &root);
    fi.disc_scale = root;
    fi.shape = FactorShape::Quadratic;
    return;
  }
  if (try_cyclotomic(fi)) return;
  if (try_radical(fi)) return;
  if (try_biquadratic(fi)) return;
  fi.shape = FactorShape::Other;
}

}  // namespace hgd
