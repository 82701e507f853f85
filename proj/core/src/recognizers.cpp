#include "hgd/recognizers.hpp"

#include "hgd/errors.hpp"
#include "hgd/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hgd {

namespace {

double dist(const Complex& a, double re, double im) { return std::hypot(a.re.to_double() - re, a.im.to_double() - im); }

std::size_t nearest_root(const FactorInfo& fi, double re, double im) {
  std::size_t best = 0;
  double bd = INFINITY;
  for (std::size_t j = 0; j < fi.roots.size(); ++j) {
    double d = dist(fi.roots[j], re, im);
    if (d < bd) {
      bd = d;
      best = j;
    }
  }
  if (bd > 1e-9 * (1 + std::hypot(re, im))) throw DomainError("internal error: reflected root not found");
  return best;
}

// k with h2(x) = (-1)^n h1(k - x), if any.
std::optional<BigInt> compatible_shift(const IntPoly& h1, const IntPoly& h2) {
  int n = h1.degree();
  if (n != h2.degree() || h1.lead() != h2.lead()) return std::nullopt;
  BigInt s = -(h1.coeff(n - 1) + h2.coeff(n - 1));
  if (s % (BigInt(n) * h1.lead()) != 0) return std::nullopt;
  BigInt k = s / (BigInt(n) * h1.lead());
  IntPoly refl = h1.compose(IntPoly{k, BigInt(-1)});
  if (n % 2 == 1) refl = -refl;
  if (refl == h2) return k;
  return std::nullopt;
}

class MatchingSearch {
 public:
  explicit MatchingSearch(const std::vector<std::vector<std::size_t>>& adj) : adj_(adj), mate_(adj.size(), kNone) {}

  bool perfect(std::vector<std::size_t>& mate_out) {
    if (adj_.size() % 2 == 1) return false;
    if (!perfect_rec()) return false;
    mate_out = mate_;
    return true;
  }

  std::vector<std::pair<std::size_t, std::size_t>> maximum() {
    std::fill(mate_.begin(), mate_.end(), kNone);
    best_.clear();
    std::vector<std::pair<std::size_t, std::size_t>> cur;
    max_rec(0, cur);
    return best_;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool perfect_rec() {
    std::size_t pick = kNone, fewest = kNone;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (mate_[v] != kNone) continue;
      std::size_t c = 0;
      for (auto w : adj_[v]) c += mate_[w] == kNone;
      if (c < fewest) {
        fewest = c;
        pick = v;
      }
    }
    if (pick == kNone) return true;
    if (fewest == 0) return false;
    for (auto w : adj_[pick]) {
      if (mate_[w] != kNone) continue;
      mate_[pick] = w;
      mate_[w] = pick;
      if (perfect_rec()) return true;
      mate_[pick] = mate_[w] = kNone;
    }
    return false;
  }

  void max_rec(std::size_t from, std::vector<std::pair<std::size_t, std::size_t>>& cur) {
    if (cur.size() > best_.size()) best_ = cur;
    std::size_t free_count = 0;
    for (std::size_t v = from; v < adj_.size(); ++v) free_count += mate_[v] == kNone;
    if (cur.size() + free_count / 2 <= best_.size()) return;
    std::size_t v = from;
    while (v < adj_.size() && mate_[v] != kNone) ++v;
    if (v >= adj_.size()) return;
    for (auto w : adj_[v]) {
      if (w <= v || mate_[w] != kNone) continue;
      mate_[v] = w;
      mate_[w] = v;
      cur.emplace_back(v, w);
      max_rec(v + 1, cur);
      cur.pop_back();
      mate_[v] = mate_[w] = kNone;
    }
    mate_[v] = v;  // leave v unmatched
    max_rec(v + 1, cur);
    mate_[v] = kNone;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> mate_;
  std::vector<std::pair<std::size_t, std::size_t>> best_;
};

}  // namespace

std::string Assumption1Result::message() const {
  if (holds)
    return "Assumption 1: YES (perfect matching on " + std::to_string(vertices.size()) + " vertices)";
  return "Assumption 1: NO (max matching size " + std::to_string(best.size()) + " of " +
         std::to_string(vertices.size()) + " vertices)";
}

Assumption1Result check_assumption1(const IntPoly& f, const EngineConfig& cfg, TowerPtr tower) {
  if (!f.is_monic()) throw DomainError("check_assumption1 needs a monic polynomial");
  Assumption1Result res;
  res.factorization = factor_over_q(f, cfg);
  const auto& fs = res.factorization.factors;
  std::vector<std::vector<std::vector<std::size_t>>> vid(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    vid[i].resize(fs[i].roots.size());
    if (fs[i].degree() < 2) continue;
    for (std::size_t j = 0; j < fs[i].roots.size(); ++j)
      for (int c = 0; c < fs[i].multiplicity; ++c) {
        vid[i][j].push_back(res.vertices.size());
        res.vertices.push_back({i, j, c});
      }
  }
  res.adjacency.assign(res.vertices.size(), {});
  struct Link {
    std::size_t a, b;
    BigInt k;
    std::vector<std::size_t> image;  // root j of a maps to root image[j] of b
  };
  std::vector<Link> links;
  for (std::size_t a = 0; a < fs.size(); ++a) {
    if (fs[a].degree() < 2) continue;
    for (std::size_t b = a; b < fs.size(); ++b) {
      auto k = compatible_shift(fs[a].poly, fs[b].poly);
      if (!k) continue;
      Link L{a, b, *k, {}};
      double kd = k->get_d();
      for (const auto& r : fs[a].roots)
        L.image.push_back(nearest_root(fs[b], kd - r.re.to_double(), -r.im.to_double()));
      links.push_back(std::move(L));
    }
  }
  auto link_of = [&](std::size_t fa, std::size_t fb) -> const Link* {
    for (const auto& L : links)
      if ((L.a == fa && L.b == fb) || (L.a == fb && L.b == fa)) return &L;
    return nullptr;
  };
  for (const auto& L : links) {
    for (std::size_t j = 0; j < L.image.size(); ++j) {
      for (auto u : vid[L.a][j])
        for (auto v : vid[L.b][L.image[j]]) {
          if (u == v || (L.a == L.b && j == L.image[j])) continue;
          res.adjacency[u].push_back(v);
          res.adjacency[v].push_back(u);
        }
    }
  }
  for (auto& row : res.adjacency) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  MatchingSearch search(res.adjacency);
  std::vector<std::size_t> mate;
  if (!search.perfect(mate)) {
    res.holds = false;
    res.best = search.maximum();
    return res;
  }
  res.holds = true;
  auto& cert = res.certificate;
  cert.vertices = res.vertices;
  for (std::size_t u = 0; u < mate.size(); ++u) {
    if (mate[u] < u) continue;
    std::size_t v = mate[u];
    const Link* L = link_of(res.vertices[u].factor, res.vertices[v].factor);
    if (!L) throw DomainError("internal error: matched vertices without a link");
    cert.pairs.push_back({u, v, L->k, std::nullopt, std::nullopt, std::nullopt});
  }
  if (!tower) {
    try {
      tower = build_tower(tower_request(res.factorization));
    } catch (const UnsupportedError&) {
      tower = nullptr;
    }
  }
  if (tower) {
    std::vector<std::vector<TowerElem>> exact(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i].degree() >= 2) exact[i] = roots_in_tower(fs[i], tower);
    cert.tower = tower;
    for (auto& pr : cert.pairs) {
      const auto& U = res.vertices[pr.u];
      const auto& V = res.vertices[pr.v];
      pr.u_exact = exact[U.factor][U.root];
      pr.v_exact = exact[V.factor][V.root];
      if (!(*pr.u_exact + *pr.v_exact == TowerElem::rational(tower, BigRational(pr.k))))
        throw DomainError("internal error: matched roots do not sum to an integer in the tower");
      pr.w = (*pr.u_exact - *pr.v_exact) * BigRational(1, 2);
    }
  }
  std::string bad = validate_matching(res.factorization, cert);
  if (!bad.empty()) throw DomainError("internal error: " + bad);
  return res;
}

std::string validate_matching(const Factorization& fac, const MatchingCertificate& cert) {
  const auto& fs = fac.factors;
  std::size_t expected = 0;
  for (const auto& fi : fs)
    if (fi.degree() >= 2) expected += static_cast<std::size_t>(fi.degree()) * fi.multiplicity;
  if (cert.vertices.size() != expected) return "vertex count does not match the irrational root multiset";
  std::vector<std::vector<int>> seen(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) seen[i].assign(fs[i].roots.size(), 0);
  for (const auto& v : cert.vertices) {
    if (v.factor >= fs.size() || fs[v.factor].degree() < 2 || v.root >= fs[v.factor].roots.size())
      return "vertex refers to a non-existent irrational root";
    if (v.copy < 0 || v.copy >= fs[v.factor].multiplicity) return "vertex copy exceeds multiplicity";
    if (++seen[v.factor][v.root] > fs[v.factor].multiplicity) return "root used more often than its multiplicity";
  }
  std::vector<int> used(cert.vertices.size(), 0);
  for (const auto& pr : cert.pairs) {
    if (pr.u >= cert.vertices.size() || pr.v >= cert.vertices.size() || pr.u == pr.v) return "malformed pair";
    if (++used[pr.u] > 1 || ++used[pr.v] > 1) return "vertex matched twice";
    const auto& U = cert.vertices[pr.u];
    const auto& V = cert.vertices[pr.v];
    if (U.factor == V.factor && U.root == V.root) return "root paired with a copy of itself";
    auto k = compatible_shift(fs[U.factor].poly, fs[V.factor].poly);
    if (!k || *k != pr.k) return "factors of a pair are not reflections of each other";
    const auto& a = fs[U.factor].roots[U.root];
    const auto& b = fs[V.factor].roots[V.root];
    double re = a.re.to_double() + b.re.to_double() - pr.k.get_d();
    double im = a.im.to_double() + b.im.to_double();
    if (std::hypot(re, im) > 1e-9 * (1 + std::hypot(a.re.to_double(), a.im.to_double())))
      return "paired roots do not sum to k";
    if (pr.u_exact && pr.v_exact) {
      if (!(*pr.u_exact + *pr.v_exact == TowerElem::rational(pr.u_exact->tower(), BigRational(pr.k))))
        return "exact roots do not sum to k";
      TowerElem diff = *pr.u_exact - *pr.v_exact;
      if (diff.is_rational() && (diff.rational_value() * BigRational(1)).is_integer())
        return "paired roots differ by an integer";
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i] != 1) return "matching is not perfect";
  return {};
}

std::optional<BigRational> detect_shifted_even(const RatPoly& f) {
  int n = f.degree();
  if (n < 1) return n == 0 ? std::optional<BigRational>(BigRational(0)) : std::nullopt;
  BigRational rho = -f.coeff(n - 1) / (BigRational(n) * f.lead());
  RatPoly h = f.shift_by(rho);
  if (h.reflect() == h) return rho;
  return std::nullopt;
}

std::optional<ClassCWitness> recognize_classC(const RatPoly& f) {
  int n = f.degree();
  if (n < 2 || n % 2 == 1) return std::nullopt;
  auto rho = detect_shifted_even(f);
  if (!rho) return std::nullopt;
  RatPoly h = f.shift_by(*rho);
  std::vector<BigRational> gc;
  for (int i = 0; i <= n; i += 2) gc.push_back(h.coeff(i) / f.lead());
  RatPoly g(gc);
  if (count_negative_roots(g) == 0) return std::nullopt;
  return ClassCWitness{*rho, g};
}

std::string RadicalFamily::str() const {
  std::string e = eligible ? "eligible" : "not eligible";
  switch (kind) {
    case Kind::XdMinusA: return "XdMinusA(" + std::to_string(d) + ", " + to_string(a) + "), " + e;
    case Kind::Cyclotomic: return "Cyclotomic(" + std::to_string(d) + "), " + e;
    case Kind::Neither: return "Neither";
  }
  return "?";
}

RadicalFamily check_radical_family(const IntPoly& f, const EngineConfig& cfg) {
  RadicalFamily r;
  int n = f.degree();
  if (n < 1 || !f.is_monic()) return r;
  if (!is_irreducible(f, cfg)) return r;
  for (long N = 1; N <= 2L * n * n + 2; ++N) {
    if (euler_phi(N) == n && cyclotomic(N) == f) {
      r.kind = RadicalFamily::Kind::Cyclotomic;
      r.d = N;
      r.eligible = N % 4 == 0;
      return r;
    }
  }
  for (int i = 1; i < n; ++i)
    if (f.coeff(i) != 0) return r;
  r.kind = RadicalFamily::Kind::XdMinusA;
  r.d = n;
  r.a = -f.coeff(0);
  r.eligible = n % 2 == 0;
  return r;
}

}  // namespace hgd
