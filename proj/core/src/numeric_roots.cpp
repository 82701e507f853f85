#include "hgd/numeric_roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace hgd {

namespace {

using cld = std::complex<long double>;

std::vector<cld> aberth_long_double(const std::vector<long double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  long double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[static_cast<std::size_t>(i)] / c.back()));
  radius = std::min<long double>(1 + radius, 1e30L);
  std::vector<cld> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    long double ang = 2 * std::numbers::pi_v<long double> * (k + 0.25L) / n + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(radius * 0.5L + 0.1L, ang);
  }
  for (int iter = 0; iter < 800; ++iter) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      cld zi = z[static_cast<std::size_t>(i)];
      cld f = c.back(), df = 0;
      for (int k = n - 1; k >= 0; --k) {
        df = df * zi + f;
        f = f * zi + c[static_cast<std::size_t>(k)];
      }
      if (f == cld(0)) continue;
      cld ratio = f / df;
      cld s = 0;
      for (int j = 0; j < n; ++j) {
        if (j != i) s += 1.0L / (zi - z[static_cast<std::size_t>(j)]);
      }
      cld w = ratio / (1.0L - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[static_cast<std::size_t>(i)] -= w;
      worst = std::max(worst, std::abs(w) / std::max<long double>(1, std::abs(zi)));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

}  // namespace

mpfr_prec_t root_precision_for(const IntPoly& f) {
  std::size_t bits = 0;
  for (const auto& c : f.coeffs()) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return static_cast<mpfr_prec_t>(192 + 2 * bits + 8 * static_cast<std::size_t>(std::max(0, f.degree())));
}

std::vector<Complex> approximate_roots(const IntPoly& f, mpfr_prec_t prec) {
  const int n = f.degree();
  std::vector<Complex> out;
  if (n <= 0) return out;
  std::vector<long double> cd;
  for (const auto& c : f.coeffs()) cd.push_back(static_cast<long double>(mpz_get_d(c.get_mpz_t())));
  auto start = aberth_long_double(cd);

  std::vector<Real> coeff;
  for (const auto& c : f.coeffs()) coeff.emplace_back(BigRational(c), prec);
  std::vector<Complex> z;
  for (const auto& s : start) z.emplace_back(Real(static_cast<double>(s.real()), prec), Real(static_cast<double>(s.imag()), prec));
  // Nudge exact duplicates apart so the Aberth correction is defined.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (mpfr_equal_p(z[i].re.get(), z[j].re.get()) && mpfr_equal_p(z[i].im.get(), z[j].im.get())) {
        z[i].im = z[i].im + Real(1e-9 * (i + 1), prec);
      }
    }
  }

  Real one(1.0, prec);
  Complex cone(one, Real(prec));
  Real tol(0.0, prec);
  mpfr_set_ui_2exp(tol.get(), 1, -static_cast<long>(prec) + 24, MPFR_RNDN);
  for (int iter = 0; iter < 400; ++iter) {
    bool done = true;
    for (int i = 0; i < n; ++i) {
      Complex zi = z[static_cast<std::size_t>(i)];
      Complex fv(prec), dfv(prec);
      fv.re = coeff.back();
      for (int k = n - 1; k >= 0; --k) {
        dfv = dfv * zi + fv;
        fv = fv * zi + Complex(coeff[static_cast<std::size_t>(k)], Real(prec));
      }
      if (fv.re.sign() == 0 && fv.im.sign() == 0) continue;
      Complex ratio = fv / dfv;
      Complex s(prec);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        s = s + cone / (zi - z[static_cast<std::size_t>(j)]);
      }
      Complex w = ratio / (cone - ratio * s);
      if (!mpfr_number_p(w.re.get()) || !mpfr_number_p(w.im.get())) continue;
      z[static_cast<std::size_t>(i)] = zi - w;
      Real scale = zi.abs();
      if (scale < one) scale = one;
      if (w.abs() / scale > tol) done = false;
    }
    if (done) break;
  }
  return z;
}

}  // namespace hgd
