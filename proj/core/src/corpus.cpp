#include "hgd/corpus.hpp"

#include <cmath>
#include <random>

namespace hgd {

std::string to_string(Family f) {
  switch (f) {
    case Family::RationalRooted: return "rational-rooted";
    case Family::Gaussian: return "gaussian";
    case Family::QuadraticImaginary: return "quadratic-imaginary";
    case Family::Mixed: return "mixed";
    case Family::RealQuadratic: return "real-quadratic";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& name) {
  for (Family f : all_families())
    if (to_string(f) == name) return f;
  if (name == "rational") return Family::RationalRooted;
  if (name == "imaginary-quadratic") return Family::QuadraticImaginary;
  return std::nullopt;
}

std::vector<Family> all_families() {
  return {Family::RationalRooted, Family::Gaussian, Family::QuadraticImaginary, Family::Mixed, Family::RealQuadratic};
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  long range(long lo, long hi) {  // inclusive
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(g_() % span);
  }
  bool chance(int percent) { return range(0, 99) < percent; }

 private:
  std::mt19937_64 g_;
};

IntPoly linear(long a) { return IntPoly(std::vector<BigInt>{BigInt(a), BigInt(1)}); }

// Monic quadratic with roots (r +- b sqrt(d)) / 2, r^2 - b^2 d divisible by 4.
IntPoly quadratic(long r, long b, long d) {
  BigInt c = (BigInt(r) * r - BigInt(b) * b * d) / 4;
  return IntPoly(std::vector<BigInt>{c, BigInt(-r), BigInt(1)});
}

struct Factors {
  IntPoly poly{BigInt(1)};
  BigInt root_sum = 0;  // sum of the roots
  void add_linear(long a) {
    poly = poly * linear(a);
    root_sum -= a;
  }
  void add_quadratic(long r, long b, long d) {
    poly = poly * quadratic(r, b, d);
    root_sum += r;
  }
};

class Generator {
 public:
  Generator(std::uint64_t seed, Family f) : rng_(seed), family_(f) {}
  InstanceDocument next();

 private:
  long pick_d();
  void add_irrational(Factors& f, long d);
  void add_random(Factors& f, long d, int quadratics, int linears);
  BigRational pick_target(const HGInstance& inst, bool harmonious);
  long double approx_limit(const HGInstance& inst);

  Rng rng_;
  Family family_;
};

long Generator::pick_d() {
  static const long imag[] = {-2, -3, -7, -11};
  static const long real[] = {2, 3, 5, 6, 7};
  switch (family_) {
    case Family::Gaussian: return -1;
    case Family::QuadraticImaginary: return imag[rng_.range(0, 3)];
    case Family::Mixed: return rng_.chance(30) ? -1 : imag[rng_.range(0, 3)];
    case Family::RealQuadratic: return real[rng_.range(0, 4)];
    case Family::RationalRooted: return 0;
  }
  return 0;
}

void Generator::add_irrational(Factors& f, long d) {
  bool half = (d % 4 + 4) % 4 == 1 && rng_.chance(50);
  if (half) {
    long r = 2 * rng_.range(-4, 1) + 1;
    long b = 2 * rng_.range(0, 1) + 1;
    f.add_quadratic(r, b, d);
  } else {
    long rho = rng_.range(-4, 1);
    long b = rng_.range(1, 3);
    f.add_quadratic(2 * rho, 2 * b, d);
  }
}

void Generator::add_random(Factors& f, long d, int quadratics, int linears) {
  for (int i = 0; i < quadratics; ++i) add_irrational(f, d);
  for (int i = 0; i < linears; ++i) f.add_linear(rng_.range(1, 9));
}

long double Generator::approx_limit(const HGInstance& inst) {
  long double u = inst.u0.to_double();
  for (long k = 0; k < 4000; ++k) {
    long double pk = 0, qk = 0, x = 1;
    for (int i = 0; i <= std::max(inst.p.degree(), inst.q.degree()); ++i) {
      pk += x * static_cast<long double>(inst.p.coeff(i).get_d());
      qk += x * static_cast<long double>(inst.q.coeff(i).get_d());
      x *= k;
    }
    u *= qk / pk;
  }
  return u;
}

BigRational round_to(long double x, long den) {
  long double n = std::nearbyint(x * den);
  return BigRational(BigInt(std::to_string(static_cast<long long>(n))), BigInt(den));
}

BigRational Generator::pick_target(const HGInstance& inst, bool harmonious) {
  int mode = static_cast<int>(rng_.range(0, harmonious ? 5 : 3));
  switch (mode) {
    case 0:
      return term(inst, rng_.range(0, 12));
    case 1: {
      BigRational u = term(inst, rng_.range(0, 12));
      return u + BigRational(BigInt(rng_.chance(50) ? 1 : -1), BigInt(rng_.range(2, 1000)));
    }
    case 2:
      return rng_.chance(50) ? BigRational(0) : BigRational(BigInt(rng_.range(-20, 20)), BigInt(rng_.range(1, 9)));
    case 3:
      return -term(inst, rng_.range(0, 6));
    default: {
      long double tau = approx_limit(inst);
      long double eps = mode == 4 ? 1e-2L : 1e-4L;
      if (rng_.chance(50)) eps = -eps;
      long double x = tau * (1 + eps);
      if (!std::isfinite(x) || std::fabs(x) > 1e12L) return BigRational(1);
      BigRational t = round_to(x, 1000000);
      return t.is_zero() ? BigRational(1, 1000000) : t;
    }
  }
}

InstanceDocument Generator::next() {
  InstanceDocument doc;
  HGInstance& inst = doc.instance;
  inst.problem = rng_.chance(50) ? Problem::Membership : Problem::Threshold;
  const long d = pick_d();
  Factors p, q;
  if (family_ == Family::RationalRooted) {
    add_random(p, 0, 0, static_cast<int>(rng_.range(1, 3)));
    add_random(q, 0, 0, p.poly.degree() - 1);
  } else {
    int quad_p = static_cast<int>(rng_.range(1, 2));
    int lin_p = static_cast<int>(rng_.range(0, family_ == Family::Mixed ? 2 : 1));
    add_random(p, d, quad_p, lin_p);
    long dq = family_ == Family::RealQuadratic && rng_.chance(50) ? pick_d() : d;
    int quad_q = static_cast<int>(rng_.range(1, quad_p));
    add_random(q, dq, quad_q, p.poly.degree() - 1 - 2 * quad_q);
  }
  // q lacks one linear factor (x + a); choose it so the root sums agree.
  BigInt gap = q.root_sum - p.root_sum;
  long a = gap.get_si();
  if (a >= 1) {
    q.add_linear(a);
  } else {
    long c = 1 - a + rng_.range(1, 4);
    p.add_linear(c);
    long total = a + c;
    long a1 = rng_.range(1, total - 1);
    q.add_linear(a1);
    q.add_linear(total - a1);
  }
  int kind = static_cast<int>(rng_.range(0, 99));
  if (kind < 60) {
    // harmonious
  } else if (kind < 72) {
    p.add_linear(rng_.range(1, 6));
    q.add_linear(rng_.range(1, 6));
  } else if (kind < 82) {
    q.add_linear(rng_.range(1, 6));
  } else if (kind < 94) {
    p.add_linear(rng_.range(1, 6));
  } else {
    q.add_linear(-rng_.range(0, 6));
    p.add_linear(rng_.range(1, 6));
  }
  inst.p = p.poly;
  inst.q = q.poly;
  inst.u0 = BigRational(BigInt(rng_.chance(85) ? 1 : -1) * rng_.range(1, 5), BigInt(rng_.range(1, 4)));
  bool harmonious = classify(inst.p, inst.q).harmonious();
  inst.t = pick_target(inst, harmonious);
  return doc;
}

}  // namespace

std::vector<InstanceDocument> generate_corpus(std::uint64_t seed, std::size_t count, Family family) {
  return generate_corpus(seed, count, std::vector<Family>{family});
}

std::vector<InstanceDocument> generate_corpus(std::uint64_t seed, std::size_t count,
                                              const std::vector<Family>& families) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < families.size(); ++i)
    gens.emplace_back(seed * 1000003ULL + 7919ULL * (static_cast<std::uint64_t>(families[i]) + 1), families[i]);
  std::vector<InstanceDocument> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(gens[i % gens.size()].next());
  return out;
}

}  // namespace hgd
