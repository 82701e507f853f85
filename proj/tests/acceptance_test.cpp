// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "oracle.hpp"

#include "hgd/corpus.hpp"
#include "hgd/document.hpp"
#include "hgd/equality.hpp"
#include "hgd/gammacanon.hpp"
#include "hgd/recognizers.hpp"
#include "hgd/schanuel.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace hgd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;  // first few problems, printed on failure
  int problems = 0;

  void fail(const std::string& what) {
    pass = false;
    if (++problems <= 8) detail << "    " << what << "\n";
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
};

HGInstance gaussian(const std::string& t, Problem problem) {
  HGInstance I;
  I.p = IntPoly{13, -4, 1};
  I.q = IntPoly{5, -4, 1};
  I.u0 = BigRational(1);
  I.t = BigRational::parse(t);
  I.problem = problem;
  return I;
}

IntPoly poly(const std::string& s) { return parse_int_poly(s); }

// Criterion 5 output shared with criteria 6 and 9.
struct CorpusRun {
  std::vector<InstanceDocument> docs;
  std::vector<std::string> certificates;
  std::vector<Verdict> verdicts;
};
CorpusRun g_corpus;

const std::vector<Family> kCorpusFamilies = {Family::RationalRooted, Family::Gaussian, Family::QuadraticImaginary,
                                             Family::Mixed};
constexpr std::uint64_t kCorpusSeed = 20240531;

void criterion1(Outcome& o) {
  auto t0 = Clock::now();
  HGInstance I = gaussian("1", Problem::Membership);
  CanonicalConstant C = limit_constant(I);

  // (a) exact Laurent identity in Z = e^{pi/D}
  o.expect(C.m == 1 && C.ell == 0 && C.theta.is_rational(), "tuple is not of the form theta * f(X)/g(X), X = e^{pi/D}");
  const long D = C.D;
  auto lift = [&](const IntPoly& f) {
    oracle::Laurent r;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
      r.add(oracle::Laurent::mono(static_cast<long>(i), mpq_class(f.coeffs()[i])));
    return r;
  };
  auto X = [&](long k, mpq_class v = 1) { return oracle::Laurent::mono(k * D, v); };
  oracle::Laurent lhs_num = lift(C.f) * oracle::Laurent::mono(0, oracle::to_mpq(C.theta.a()));
  oracle::Laurent lhs_den = lift(C.g);
  // e^{3pi}(e^{2pi} - 1) / (39 e^{pi} (e^{6pi} - 1))
  oracle::Laurent rhs_num = X(3) * (X(2) - X(0));
  oracle::Laurent rhs_den = X(1, 39) * (X(6) - X(0));
  o.expect((lhs_num * rhs_den - rhs_num * lhs_den).is_zero(), "tuple differs from e^{3pi}(e^{2pi}-1)/(39e^{pi}(e^{6pi}-1))");
  // sinh(pi) / (39 sinh(3pi)) = (X - X^-1) / (39 (X^3 - X^-3))
  oracle::Laurent sinh_num = X(1) - X(-1);
  oracle::Laurent sinh_den = X(3, 39) - X(-3, 39);
  o.expect((lhs_num * sinh_den - sinh_num * lhs_den).is_zero(), "tuple differs from sinh(pi)/(39 sinh(3pi))");

  // (b) partial product to K = 1000 with an envelope derived here:
  // r(k) = 1 - x_k, x_k = 8/((k-2)^2 + 9) <= 8/(k-2)^2 <= 1/2, so
  // |log r(k)| <= 2 x_k and sum_{k>=K} 16/(k-2)^2 <= 16/(K-3).
  const long K = 1000;
  oracle::ExactTerm P = oracle::exact_term(I, K);
  mpq_class Pq(P.num, P.den);
  Pq.canonicalize();
  oracle::Bracket br(Pq, mpq_class(16, K - 3), 192);
  Interval enc = C.enclose(128);
  bool overlap = mpfr_lessequal_p(enc.lo().get(), br.hi) && mpfr_lessequal_p(br.lo, enc.hi().get());
  o.expect(overlap, "128-bit enclosure misses the partial product bracket");
  o.expect(matches_partial_product(C, I, K, 128), "engine partial-product check failed");
  double s = seconds_since(t0);
  o.expect(s < 1.0, "runtime " + std::to_string(s) + " s");
}

void criterion2(Outcome& o) {
  struct Case {
    const char* t;
    Problem problem;
    Verdict::Outcome outcome;
    std::optional<std::int64_t> witness;
    int exit;
  };
  const Case cases[] = {
      {"1/13", Problem::Membership, Verdict::Outcome::Member, 2, 0},
      {"5/13", Problem::Membership, Verdict::Outcome::Member, 1, 0},
      {"1/7", Problem::Membership, Verdict::Outcome::NotMember, std::nullopt, 1},
      {"1/26", Problem::Threshold, Verdict::Outcome::Fails, 3, 1},
  };
  for (const auto& c : cases) {
    InstanceDocument doc{gaussian(c.t, c.problem), Mode::Auto};
    auto t0 = Clock::now();
    Decision d = decide(doc);
    double s = seconds_since(t0);
    std::string tag = std::string("t = ") + c.t + ": ";
    o.expect(d.verdict.outcome == c.outcome && d.verdict.witness == c.witness, tag + d.verdict.str());
    o.expect(d.verdict.conditionality == Conditionality::Unconditional, tag + "not unconditional");
    o.expect(exit_code(d.verdict) == c.exit, tag + "exit code");
    o.expect(s < 1.0, tag + "runtime " + std::to_string(s) + " s");
    VerifyReport rep = verify_certificate(certificate_json(d));
    o.expect(rep.ok(), tag + "certificate rejected:\n" + rep.str());
    // independent check of the witness
    auto hit = oracle::first_hit(doc.instance, 10000);
    o.expect(hit == (c.witness ? std::optional<long>(*c.witness) : std::nullopt), tag + "oracle disagrees");
  }
}

void criterion3(Outcome& o) {
  CanonicalConstant C = limit_constant(gaussian("1", Problem::Membership));
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  const auto before = interval_evaluation_count();
  int equal = 0;
  for (int i = 0; i < 1000; ++i) {
    long a = 0;
    while (a == 0) a = num(rng);
    EqualityDecision d = decide_equal(C, BigRational(BigInt(a), BigInt(den(rng))));
    if (d.equal) ++equal;
  }
  const auto evaluations = interval_evaluation_count() - before;
  o.expect(equal == 0, std::to_string(equal) + " rationals reported equal");
  o.expect(evaluations == 0, std::to_string(evaluations) + " interval evaluations on the equality path");
}

void criterion4(Outcome& o) {
  const std::vector<std::pair<std::string, bool>> cases = {
      {"x^4 - x^2 + 1", true},                   // Phi_12
      {"x^8 + 1", true},                         // Phi_16
      {"x^8 - x^6 + x^4 - x^2 + 1", true},       // Phi_20
      {"x^8 - x^4 + 1", true},                   // Phi_24
      {"x^4 - 2", true},
      {"x^6 - 3", true},
      {"x^2 - x + 1", true},
      {"x^2 - 4x + 13", true},
      {"x^6 - x^3 + 1", false},                  // Phi_18
      {"x^4 - 4x^2 - 8x + 2", false},
      {"x^4 - 5x^3 - 71x^2 + 120x + 1044", false},
      {"x^4 - x^3 - 16x^2 + 37x - 17", false},
  };
  for (const auto& [text, expected] : cases) {
    auto t0 = Clock::now();
    Assumption1Result r = check_assumption1(poly(text));
    double s = seconds_since(t0);
    o.expect(r.holds == expected, text + ": " + r.message());
    if (r.holds) {
      std::string why = validate_matching(r.factorization, r.certificate);
      o.expect(why.empty(), text + ": matching does not validate: " + why);
    }
    o.expect(s < 0.1, text + ": " + std::to_string(s) + " s");
  }
}

bool consistent(const HGInstance& I, const Verdict& v, const std::optional<long>& hit, std::string& why) {
  const long kLimit = 10000;
  bool positive_problem = I.problem == Problem::Membership;  // a hit means Member / Fails
  bool hit_outcome = positive_problem ? v.outcome == Verdict::Outcome::Member : v.outcome == Verdict::Outcome::Fails;
  if (hit) {
    if (!hit_outcome || !v.witness || *v.witness != *hit) {
      why = "oracle index " + std::to_string(*hit) + ", engine " + v.str();
      return false;
    }
    return true;
  }
  if (hit_outcome && (!v.witness || *v.witness <= kLimit)) {
    why = "oracle finds nothing up to 10^4, engine " + v.str();
    return false;
  }
  return true;
}

Verdict decide_problem(const HGInstance& I) {
  return I.problem == Problem::Membership ? decide_membership(I) : decide_threshold(I);
}

void criterion5(Outcome& o) {
  g_corpus.docs = generate_corpus(kCorpusSeed, 500, kCorpusFamilies);
  int verify_failures = 0;
  for (std::size_t i = 0; i < g_corpus.docs.size(); ++i) {
    const auto& doc = g_corpus.docs[i];
    try {
      Verdict v = decide_problem(doc.instance);
      std::string why;
      if (!consistent(doc.instance, v, oracle::first_hit(doc.instance, 10000), why))
        o.fail("instance " + std::to_string(i) + ": " + why);
      Decision d;
      d.input = doc;
      d.verdict = v;
      d.procedure = "unconditional";
      std::string cert = certificate_json(d, false);
      if (!verify_certificate(cert).ok()) ++verify_failures;
      g_corpus.verdicts.push_back(v);
      g_corpus.certificates.push_back(cert);
    } catch (const Error& e) {
      o.fail("instance " + std::to_string(i) + ": " + e.what());
    }
  }
  o.expect(verify_failures == 0, std::to_string(verify_failures) + " certificates rejected by verify");
}

void criterion6(Outcome& o) {
  int bounds = 0;
  for (std::size_t i = 0; i < g_corpus.verdicts.size(); ++i) {
    const Verdict& v = g_corpus.verdicts[i];
    if (!v.bound) continue;
    ++bounds;
    const HGInstance& I = g_corpus.docs[i].instance;
    const bool divergent = v.route == Verdict::Route::Divergent;
    const mpq_class t = oracle::to_mpq(I.t);
    oracle::ExactTerm u = oracle::exact_term(I, v.bound->N);
    for (long n = v.bound->N; n <= v.bound->N + 50; ++n) {
      int c = oracle::cmp_abs(u, t);
      if (divergent ? c <= 0 : c >= 0) {
        o.fail("instance " + std::to_string(i) + ": bound N = " + std::to_string(v.bound->N) + " violated at n = " +
               std::to_string(n));
        break;
      }
      u.num *= oracle::eval(I.q, n);
      u.den *= oracle::eval(I.p, n);
    }
  }
  o.expect(bounds > 0, "no search bounds were emitted");
}

void criterion7(Outcome& o) {
  std::mt19937_64 rng(7);
  auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  int generated = 0;
  while (generated < 100) {
    mpq_class rho(uni(-12, 12), uni(1, 4));
    rho.canonicalize();
    std::vector<mpq_class> g;  // monic, ascending
    if (uni(0, 2) == 0) {
      mpq_class c(uni(1, 30), uni(1, 3));
      c.canonicalize();
      g = {c, 1};  // root -c < 0
    } else {
      mpq_class b(uni(-9, 9), uni(1, 2)), c(uni(-20, 20), uni(1, 2));
      b.canonicalize();
      c.canonicalize();
      mpq_class disc = b * b - 4 * c;
      if (disc <= 0) continue;
      mpz_class dn = disc.get_num() * disc.get_den();
      if (mpz_perfect_square_p(dn.get_mpz_t())) continue;  // reducible
      // smaller root (-b - sqrt(disc))/2 is negative iff b > 0 or c < 0
      if (!(b > 0 || c < 0)) continue;
      g = {c, b, 1};
    }
    // f(x) = g((x - rho)^2)
    std::vector<mpq_class> s = {rho * rho, -2 * rho, 1};
    std::vector<mpq_class> f = {0}, power = {1};
    for (const auto& gc : g) {
      if (f.size() < power.size()) f.resize(power.size(), 0);
      for (std::size_t i = 0; i < power.size(); ++i) f[i] += gc * power[i];
      std::vector<mpq_class> next(power.size() + 2, 0);
      for (std::size_t i = 0; i < power.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) next[i + j] += power[i] * s[j];
      power = next;
    }
    std::vector<BigRational> fc;
    for (const auto& c : f) fc.emplace_back(BigInt(c.get_num()), BigInt(c.get_den()));
    auto w = recognize_classC(RatPoly(fc));
    std::vector<BigRational> gc;
    for (const auto& c : g) gc.emplace_back(BigInt(c.get_num()), BigInt(c.get_den()));
    if (!w || oracle::to_mpq(w->rho) != rho || !(w->g == RatPoly(gc)))
      o.fail("pair " + std::to_string(generated) + ": rho = " + rho.get_str() + ", g = " + RatPoly(gc).str() +
             " not recovered");
    ++generated;
  }
  for (const char* q : {"x^4 - 5x^3 - 71x^2 + 120x + 1044", "x^4 - x^3 - 16x^2 + 37x - 17"})
    o.expect(!recognize_classC(poly(q)), std::string(q) + " accepted");
}

void criterion8(Outcome& o) {
  // imaginary quadratic: both procedures must agree
  auto imag = generate_corpus(kCorpusSeed + 8, 100, {Family::QuadraticImaginary, Family::Gaussian});
  int compared = 0;
  for (std::size_t i = 0; i < imag.size(); ++i) {
    const HGInstance& I = imag[i].instance;
    try {
      Verdict u = decide_unconditional(I);
      ConditionalVerdict c = decide_conditional(I);
      ++compared;
      if (u.outcome != c.verdict.outcome || u.witness != c.verdict.witness)
        o.fail("imaginary " + std::to_string(i) + ": unconditional " + u.str() + ", conditional " + c.verdict.str());
    } catch (const Error& e) {
      o.fail("imaginary " + std::to_string(i) + ": " + e.what());
    }
  }
  o.expect(compared == 100, "only " + std::to_string(compared) + " imaginary-quadratic instances compared");

  // real quadratic: conditionality labels and enclosures
  auto real = generate_corpus(kCorpusSeed + 9, 50, Family::RealQuadratic);
  const auto stress_before = schanuel_stress_cases().size();
  int not_equal = 0, equal = 0;
  for (std::size_t i = 0; i < real.size(); ++i) {
    const HGInstance& I = real[i].instance;
    std::string tag = "real " + std::to_string(i) + ": ";
    try {
      o.expect(check_assumption1(I.p).holds && check_assumption1(I.q).holds, tag + "not an Assumption-1 instance");
      ConditionalVerdict c = decide_conditional(I);
      const Verdict& v = c.verdict;
      if (v.conditionality == Conditionality::ConditionalOnSchanuel)
        o.expect(!v.witness && v.limit && v.limit->conditional && v.limit->evidence.relation != Relation::Equal,
                 tag + "conditional label without a conditional limit comparison");
      if (!c.identity_decision) continue;
      const IdentityDecision& idd = *c.identity_decision;
      if (idd.outcome == IdentityDecision::Outcome::HoldsUnconditionally) {
        ++equal;
        o.expect(v.conditionality == Conditionality::Unconditional, tag + "Equal branch labelled conditional");
        o.expect(v.limit && !v.limit->conditional, tag + "Equal branch comparison marked conditional");
      } else {
        ++not_equal;
        if (idd.fast_path == IdentityDecision::FastPath::None)
          o.expect(v.limit && v.limit->conditional, tag + "NotEqual branch not marked ConditionalOnSchanuel");
        o.expect(c.identity_enclosure && c.identity_enclosure->separated, tag + "identity enclosure not separated");
      }
    } catch (const Error& e) {
      o.fail(tag + e.what());
    }
  }
  const auto stress = schanuel_stress_cases().size() - stress_before;
  o.expect(stress == 0, std::to_string(stress) + " stress cases logged");
  o.expect(not_equal > 0, "no NotEqual identity among the real-quadratic instances");
  if (o.pass)
    o.detail << "    " << not_equal << " NotEqual and " << equal << " Equal identities, " << stress
             << " stress cases\n";
}

void criterion9(Outcome& o) {
  const auto& docs = g_corpus.docs;
  auto again = generate_corpus(kCorpusSeed, docs.size(), kCorpusFamilies);
  for (std::size_t i = 0; i < docs.size(); ++i)
    if (serialize_instance(docs[i]) != serialize_instance(again[i])) {
      o.fail("instance " + std::to_string(i) + " regenerated differently");
      return;
    }
  // second run through a worker pool, merged by input order
  std::vector<std::string> second(again.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < again.size(); i = next++) {
      try {
        Decision d;
        d.input = again[i];
        d.verdict = decide_problem(again[i].instance);
        d.procedure = "unconditional";
        second[i] = certificate_json(d, false);
      } catch (const Error& e) {
        second[i] = std::string("error: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < 4; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  o.expect(g_corpus.certificates.size() == second.size(), "first run is incomplete");
  for (std::size_t i = 0; i < std::min(second.size(), g_corpus.certificates.size()); ++i)
    if (g_corpus.certificates[i] != second[i]) o.fail("certificate " + std::to_string(i) + " differs between runs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"canonical tuple of the x^2-4x+13, x^2-4x+5 limit (Laurent identity and 128-bit partial product)", criterion1},
      {"verdicts and certificates for the x^2-4x+13, x^2-4x+5 sequence", criterion2},
      {"equality decisions with no interval evaluations", criterion3},
      {"Assumption 1 matching suite", criterion4},
      {"oracle equivalence on 500 corpus instances", criterion5},
      {"search bound soundness at N..N+50", criterion6},
      {"class C recognizer on 100 generated pairs", criterion7},
      {"conditional path consistency", criterion8},
      {"deterministic certificates", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    char line[256];
    std::snprintf(line, sizeof line, "[%s] criterion %zu: %s (%.2f s)", o.pass ? "PASS" : "FAIL", i + 1,
                  criteria[i].first.c_str(), seconds_since(t0));
    std::cout << line << "\n" << o.detail.str() << std::flush;
    if (!o.pass) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
