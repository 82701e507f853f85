#include "hgd/document.hpp"

#include "hgd/equality.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

namespace hgd {

using nlohmann::json;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Auto: return "auto";
    case Mode::Unconditional: return "unconditional";
    case Mode::Conditional: return "conditional";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

BigInt coefficient_from(const json& v, const std::string& where) {
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    try {
      return parse_bigint(v.get<std::string>());
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected an integer or a decimal string");
}

json coefficient_to(const BigInt& c) {
  if (c.fits_slong_p()) return json(static_cast<std::int64_t>(c.get_si()));
  return json(to_string(c));
}

IntPoly poly_from(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of coefficients in ascending order");
  std::vector<BigInt> c;
  for (std::size_t i = 0; i < v.size(); ++i) c.push_back(coefficient_from(v[i], where + "/" + std::to_string(i)));
  IntPoly p(c);
  if (p.is_zero()) fail(where, "polynomial is zero");
  return p;
}

json poly_to(const IntPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(coefficient_to(c));
  return a;
}

BigRational rational_from(const json& v, const std::string& where) {
  if (v.is_number_integer()) return BigRational(BigInt(std::to_string(v.get<std::int64_t>())));
  if (!v.is_string()) fail(where, "expected a rational string \"a/b\"");
  try {
    return BigRational::parse(v.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

InstanceDocument instance_from(const json& j) {
  if (!j.is_object()) fail("/", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const char* known[] = {"p", "q", "u0", "t", "problem", "mode"};
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) fail("/" + it.key(), "unknown field");
  }
  for (const char* k : {"p", "q", "u0", "t", "problem"})
    if (!j.contains(k)) fail(std::string("/") + k, "missing field");
  InstanceDocument doc;
  doc.instance.p = poly_from(j["p"], "/p");
  doc.instance.q = poly_from(j["q"], "/q");
  doc.instance.u0 = rational_from(j["u0"], "/u0");
  doc.instance.t = rational_from(j["t"], "/t");
  const json& pr = j["problem"];
  if (pr == "membership") doc.instance.problem = Problem::Membership;
  else if (pr == "threshold") doc.instance.problem = Problem::Threshold;
  else fail("/problem", "expected \"membership\" or \"threshold\"");
  if (j.contains("mode")) {
    const json& m = j["mode"];
    if (m == "auto") doc.mode = Mode::Auto;
    else if (m == "unconditional") doc.mode = Mode::Unconditional;
    else if (m == "conditional") doc.mode = Mode::Conditional;
    else fail("/mode", "expected \"auto\", \"unconditional\" or \"conditional\"");
  }
  try {
    doc.instance.validate();
  } catch (const DomainError& e) {
    fail("/p", e.what());
  }
  return doc;
}

json instance_to(const InstanceDocument& doc) {
  json j;
  j["p"] = poly_to(doc.instance.p);
  j["q"] = poly_to(doc.instance.q);
  j["u0"] = doc.instance.u0.str();
  j["t"] = doc.instance.t.str();
  j["problem"] = to_string(doc.instance.problem);
  j["mode"] = to_string(doc.mode);
  return j;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    auto pos = what.find("] ");
    throw ParseError(pos == std::string::npos ? what : what.substr(pos + 2));
  }
}

}  // namespace

InstanceDocument parse_instance(const std::string& text) { return instance_from(parse_json(text)); }

std::string serialize_instance(const InstanceDocument& doc) { return instance_to(doc).dump(2) + "\n"; }

Decision decide(const InstanceDocument& doc, const EngineConfig& cfg, const ConditionalOptions& opt) {
  Decision d;
  d.input = doc;
  auto start = std::chrono::steady_clock::now();
  auto conditional = [&] {
    d.conditional = decide_conditional(doc.instance, cfg, opt);
    d.verdict = d.conditional->verdict;
    d.procedure = "conditional";
  };
  switch (doc.mode) {
    case Mode::Unconditional:
      d.verdict = decide_unconditional(doc.instance, cfg);
      d.procedure = "unconditional";
      break;
    case Mode::Conditional:
      conditional();
      break;
    case Mode::Auto:
      try {
        d.verdict = decide_unconditional(doc.instance, cfg);
        d.procedure = "unconditional";
      } catch (const UnsupportedError& e) {
        d.fallback = e.what();
        conditional();
      }
      break;
  }
  d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return d;
}

int exit_code(const Verdict& v) {
  int base = v.positive() ? 0 : 1;
  return v.conditionality == Conditionality::ConditionalOnSchanuel ? 10 + base : base;
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case Error::Category::Unsupported: return 2;
    case Error::Category::Resource: return 3;
    case Error::Category::Parse:
    case Error::Category::Domain: return 4;
  }
  return 4;
}

namespace {

json constant_to(const CanonicalConstant& C) {
  json j;
  j["theta"] = {{"a", C.theta.a().str()}, {"b", C.theta.b().str()}};
  j["ell"] = C.ell;
  j["f"] = poly_to(C.f);
  j["g"] = poly_to(C.g);
  j["m"] = to_string(C.m);
  j["D"] = C.D;
  j["base_trivial"] = C.base_trivial;
  j["form"] = C.str();
  j["enclosure_128"] = C.enclose(128).str(30);
  return j;
}

CanonicalConstant constant_from(const json& j) {
  CanonicalConstant C;
  C.m = parse_bigint(j.at("m").get<std::string>());
  BigRational a = BigRational::parse(j.at("theta").at("a").get<std::string>());
  BigRational b = BigRational::parse(j.at("theta").at("b").get<std::string>());
  C.theta = C.m == 1 ? QuadElem(a, b, BigInt(-1)) : QuadElem(a, b, C.m);
  C.ell = j.at("ell").get<long>();
  C.f = poly_from(j.at("f"), "/constant/f");
  C.g = poly_from(j.at("g"), "/constant/g");
  C.D = j.at("D").get<long>();
  C.base_trivial = j.at("base_trivial").get<bool>();
  return C;
}

json matching_to(const Assumption1Result& a) {
  json j;
  j["message"] = a.message();
  json pairs = json::array();
  for (const auto& pr : a.certificate.pairs) {
    json e;
    e["k"] = to_string(pr.k);
    if (pr.u_exact) e["u"] = pr.u_exact->str();
    if (pr.v_exact) e["v"] = pr.v_exact->str();
    if (pr.w) e["w"] = pr.w->str();
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  return j;
}

}  // namespace

std::string certificate_json(const Decision& d, bool include_timing) {
  const Verdict& v = d.verdict;
  json j;
  j["format"] = "hgdecide-certificate/1";
  j["instance"] = instance_to(d.input);
  j["procedure"] = d.procedure;
  if (!d.fallback.empty()) j["fallback"] = d.fallback;
  j["verdict"] = {{"outcome", to_string(v.outcome)},
                  {"witness", v.witness ? json(*v.witness) : json(nullptr)},
                  {"conditionality", to_string(v.conditionality)}};
  j["class"] = {{"kind", v.cls.str()}, {"harmonious", v.cls.harmonious()}};
  j["route"] = to_string(v.route);
  json scan;
  scan["prefix_end"] = v.prefix_end;
  scan["scan_end"] = v.scan_end;
  scan["sign_from"] = v.sign_from;
  scan["tail_sign"] = v.tail_sign;
  scan["K0"] = v.K0;
  scan["tail_direction"] = v.tail_direction;
  scan["zero_from"] = v.zero_from ? json(*v.zero_from) : json(nullptr);
  j["scan"] = scan;
  if (v.bound)
    j["bound"] = {{"N", v.bound->N}, {"ratio_from", v.bound->ratio_from},
                  {"justification", to_string(v.bound->justification)}};
  long bits = 0;
  if (v.limit) {
    const auto& ev = v.limit->evidence;
    j["limit"] = {{"relation", to_string(ev.relation)},
                  {"rationale", to_string(ev.rationale)},
                  {"precision_bits", ev.precision_bits},
                  {"conditional", v.limit->conditional}};
    bits = ev.precision_bits;
  }
  if (v.constant) j["constant"] = constant_to(*v.constant);
  if (d.conditional && d.conditional->identity_trace) {
    const ConditionalVerdict& cv = *d.conditional;
    json c;
    c["tower"] = cv.identity_trace->tower->describe();
    c["identity"] = cv.identity_trace->str();
    c["terms"] = cv.identity_trace->poly.size();
    c["decision"] = cv.identity_decision->str();
    if (cv.identity_enclosure)
      c["enclosure"] = {{"separated", cv.identity_enclosure->separated}, {"bits", cv.identity_enclosure->bits}};
    if (cv.assumption_p) c["matching_p"] = matching_to(*cv.assumption_p);
    if (cv.assumption_q) c["matching_q"] = matching_to(*cv.assumption_q);
    if (cv.basis) {
      json S = json::array();
      for (const auto& s : cv.basis->S) S.push_back(s.str());
      c["basis"] = S;
    }
    if (cv.norm) c["galois_norm"] = to_string(*cv.norm, cv.identity_trace->names());
    j["identity"] = c;
  }
  j["precision_bits"] = bits;
  if (include_timing) j["timing"] = {{"seconds", d.seconds}};
  return j.dump(2) + "\n";
}

std::string VerifyReport::str() const {
  std::ostringstream os;
  for (const auto& p : passed) os << "ok    " << p << "\n";
  for (const auto& f : failed) os << "FAIL  " << f << "\n";
  os << (ok() ? "certificate verified" : "certificate REJECTED") << " (" << passed.size() << " checks passed, "
     << failed.size() << " failed)\n";
  return os.str();
}

namespace {

class Verifier {
 public:
  Verifier(const json& j, const EngineConfig& cfg) : j_(j), cfg_(cfg) {}
  VerifyReport run();

 private:
  bool check(bool cond, const std::string& what) {
    (cond ? r_.passed : r_.failed).push_back(what);
    return cond;
  }
  bool hit(SequenceScanner& s) { return mem_ ? s.equals(I_.t) : s.compare(I_.t) < 0; }
  SequenceScanner at(std::int64_t n) {
    SequenceScanner s(I_);
    while (s.index() < n) s.advance();
    return s;
  }
  void witness(std::int64_t n);
  void clean_prefix(std::int64_t last);
  void divergent_or_shrinking(bool divergent);
  void harmonious();
  void limit();
  bool nonvanishing() const { return !I_.u0.is_zero() && !first_nonnegative_integer_root(I_.q); }
  bool alternating() const { return sgn(I_.p.lead()) * sgn(I_.q.lead()) < 0; }

  const json& j_;
  const EngineConfig& cfg_;
  VerifyReport r_;
  HGInstance I_;
  bool mem_ = true;
  std::string outcome_;
  std::int64_t scan_end_ = 0;
};

void Verifier::witness(std::int64_t n) {
  SequenceScanner s(I_);
  bool early = false;
  while (s.index() < n) {
    if (hit(s)) early = true;
    s.advance();
  }
  check(!early, "no earlier index than " + std::to_string(n) + " satisfies the condition");
  check(hit(s), mem_ ? "u_" + std::to_string(n) + " = t exactly" : "u_" + std::to_string(n) + " < t exactly");
}

void Verifier::clean_prefix(std::int64_t last) {
  SequenceScanner s(I_);
  bool any = false;
  for (;;) {
    if (hit(s)) any = true;
    if (s.index() >= last) break;
    s.advance();
  }
  check(!any, std::string(mem_ ? "t does not occur" : "u_n >= t") + " for n = 0.." + std::to_string(last));
}

void Verifier::divergent_or_shrinking(bool divergent) {
  const json& sc = j_["scan"];
  const BigRational& t = I_.t;
  std::int64_t sign_from = sc["sign_from"].get<std::int64_t>();
  auto sign_tail = [&]() {
    check(BigRational(sign_from) >= std::max(cauchy_bound(I_.p), cauchy_bound(I_.q)),
          "p and q keep their sign beyond n = " + std::to_string(sign_from));
    check(!alternating(), "terms keep one sign beyond n = " + std::to_string(sign_from));
    check(scan_end_ >= sign_from && at(sign_from).sign() > 0, "u_n > 0 for n >= " + std::to_string(sign_from));
  };
  if (mem_ && t.is_zero()) {
    check(nonvanishing(), "u0 != 0 and q has no nonnegative integer root, so u_n != 0");
    return;
  }
  if (!mem_ && t.is_zero()) {
    sign_tail();
    return;
  }
  if (!j_.contains("bound")) {
    int tail = at(std::max<std::int64_t>(sign_from, 0)).sign();
    check(BigRational(sign_from) >= std::max(cauchy_bound(I_.p), cauchy_bound(I_.q)) && !alternating(),
          "terms keep one sign beyond n = " + std::to_string(sign_from));
    check(scan_end_ >= sign_from && tail != 0 && tail != t.sign() && (mem_ || tail > 0),
          "the tail beyond n = " + std::to_string(sign_from) + " has the opposite sign to t");
    return;
  }
  std::int64_t N = j_["bound"]["N"].get<std::int64_t>();
  std::int64_t R = j_["bound"]["ratio_from"].get<std::int64_t>();
  IntPoly gap = divergent ? I_.q * I_.q - I_.p * I_.p : I_.p * I_.p - I_.q * I_.q;
  check(!gap.is_zero() && sgn(gap.lead()) > 0 && BigRational(R) >= cauchy_bound(gap) &&
            BigRational(R) >= cauchy_bound(I_.p),
        std::string("|r(n)| ") + (divergent ? ">" : "<") + " 1 for n >= " + std::to_string(R));
  check(N >= R, "bound N is beyond the ratio index");
  int c = at(N).compare_abs(t);
  check(divergent ? c > 0 : c < 0,
        std::string("|u_N| ") + (divergent ? ">" : "<") + " |t| at N = " + std::to_string(N));
  if (mem_) {
    check(scan_end_ >= N - 1, "prefix 0..N-1 scanned");
  } else if (divergent) {
    check(scan_end_ >= std::max(N, sign_from), "prefix scanned to max(N, sign index)");
    if (outcome_ == "Holds") sign_tail();
  } else {
    check(t.sign() < 0 && scan_end_ >= N - 1, "negative threshold with prefix 0..N-1 scanned");
  }
}

void Verifier::harmonious() {
  const json& sc = j_["scan"];
  const BigRational& t = I_.t;
  std::int64_t K0 = sc["K0"].get<std::int64_t>();
  if (mem_ && t.is_zero()) {
    check(nonvanishing(), "u_n never vanishes");
    return;
  }
  check(K0 >= monotonicity_index(I_.p, I_.q), "monotonicity index K0 = " + std::to_string(K0) + " is valid");
  SequenceScanner sK = at(K0);
  int sigma = sK.sign();
  int delta = sigma * sgn((I_.q - I_.p).lead());
  check(sc["tail_sign"].get<int>() == sigma && sc["tail_direction"].get<int>() == delta,
        "tail sign and direction match u_K0 and lead(q - p)");
  const json* lim = j_.contains("limit") ? &j_["limit"] : nullptr;
  std::string rel = lim ? (*lim)["relation"].get<std::string>() : "";
  if (mem_) {
    check(scan_end_ >= K0, "prefix 0..K0 scanned");
    bool sign_ok = t.sign() != sigma;
    bool away = delta * sK.compare(t) >= 0;
    bool by_limit = lim && (rel == "Equal" || (rel == "Greater" ? 1 : -1) != delta);
    bool passed = false;
    if (scan_end_ > K0) {
      int c = at(scan_end_).compare(t) > 0 ? 1 : -1;
      passed = c == delta;
    }
    check(sign_ok || away || by_limit || passed, "the monotone tail cannot reach t");
  } else {
    check(scan_end_ >= K0, "prefix 0..K0 scanned");
    bool inc = delta > 0;
    bool sign_ok = sigma > 0 && t.sign() <= 0;
    bool by_limit = lim && rel != "Less";
    check(inc || sign_ok || by_limit, "the monotone tail stays at or above t");
  }
}

void Verifier::limit() {
  const json& lim = j_["limit"];
  const BigRational& t = I_.t;
  std::string rel = lim["relation"].get<std::string>();
  bool conditional = lim["conditional"].get<bool>();
  std::string procedure = j_["procedure"].get<std::string>();
  if (procedure == "unconditional") {
    check(!conditional, "unconditional procedure makes no conditional claim");
    if (!j_.contains("constant")) {
      check(false, "canonical constant is present");
      return;
    }
    CanonicalConstant C = constant_from(j_["constant"]);
    if (!t.is_zero()) {
      EqualityDecision d = decide_equal(C, t);
      check(d.equal == (rel == "Equal"), "symbolic equality test reproduces " + rel);
      if (rel == "Equal") check(to_string(d.rationale) == lim["rationale"].get<std::string>(), "equality rationale");
    }
    if (rel != "Equal") {
      long bits = lim["precision_bits"].get<long>();
      Interval diff = eval_enclosure(C.expr() - ConstExpr::rational(t), bits, cfg_.precision_cap_bits);
      int s = diff.sign();
      check(s == (rel == "Greater" ? 1 : -1), "enclosure at " + std::to_string(bits) + " bits separates the limit from t");
    }
    check(matches_partial_product(C, I_, 1000, 128), "constant agrees with a long partial product within the tail envelope");
    return;
  }
  ConditionalVerdict cv = decide_conditional(I_, cfg_);
  bool replay = cv.identity_trace && j_.contains("identity") &&
                cv.identity_trace->str() == j_["identity"]["identity"].get<std::string>();
  check(replay, "symbolic identity replays identically");
  if (!cv.identity_trace || !cv.verdict.limit) return;
  IdentityDecision dec = decide_identity(*cv.identity_trace);
  check((dec.outcome == IdentityDecision::Outcome::HoldsUnconditionally) == (rel == "Equal"),
        "identity cancellation matches the recorded relation");
  if (rel != "Equal") {
    EqualityVerdict ev = compare_identity(*cv.identity_trace, cfg_);
    check(to_string(ev.relation) == rel, "identity evaluation reproduces " + rel);
    check(conditional == !dec.unconditional(), "conditionality of the inequality matches the identity's symbols");
  } else {
    check(!conditional, "cancelled identity is unconditional");
  }
}

VerifyReport Verifier::run() {
  if (j_.value("format", "") != "hgdecide-certificate/1") {
    check(false, "certificate format tag");
    return r_;
  }
  I_ = instance_from(j_["instance"]).instance;
  mem_ = I_.problem == Problem::Membership;
  const json& vj = j_["verdict"];
  outcome_ = vj["outcome"].get<std::string>();
  std::string cond = vj["conditionality"].get<std::string>();
  check(mem_ ? (outcome_ == "Member" || outcome_ == "NotMember") : (outcome_ == "Holds" || outcome_ == "Fails"),
        "outcome fits the problem");
  AsymptoticClass cls = classify(I_.p, I_.q);
  check(cls.str() == j_["class"]["kind"].get<std::string>(), "asymptotic class " + cls.str());
  scan_end_ = j_["scan"]["scan_end"].get<std::int64_t>();
  if (scan_end_ > cfg_.scan_cap) {
    check(false, "scan range within the scan cap");
    return r_;
  }
  if (!vj["witness"].is_null()) {
    witness(vj["witness"].get<std::int64_t>());
    check(cond == "Unconditional", "witnessed verdicts are unconditional");
    return r_;
  }
  clean_prefix(scan_end_);
  std::string route = j_["route"].get<std::string>();
  if (route == "AllZero") {
    check(I_.u0.is_zero(), "u0 = 0, so every term is zero");
  } else if (route == "ZeroTail") {
    const json& z = j_["scan"]["zero_from"];
    std::int64_t zf = z.is_null() ? -1 : z.get<std::int64_t>();
    check(zf >= 1 && I_.q.eval(BigInt(zf - 1)) == 0 && scan_end_ >= zf, "q vanishes at n = zero_from - 1 and the zero term was scanned");
  } else if (route == "ConstantSequence") {
    check(I_.p == I_.q, "p = q, so every term equals u0");
  } else if (route == "Divergent" || route == "Shrinking") {
    check(route == "Divergent" ? cls.diverges() : cls.shrinks(), "route matches the class");
    divergent_or_shrinking(route == "Divergent");
  } else if (route == "Harmonious") {
    check(cls.harmonious(), "route matches the class");
    harmonious();
  } else {
    check(false, "known route");
  }
  if (j_.contains("limit")) limit();
  bool lim_cond = j_.contains("limit") && j_["limit"]["conditional"].get<bool>() &&
                  j_["limit"]["relation"].get<std::string>() != "Equal";
  if (cond == "ConditionalOnSchanuel") check(lim_cond, "conditional verdict rests on a conditional inequality");
  return r_;
}

}  // namespace

VerifyReport verify_certificate(const std::string& text, const EngineConfig& cfg) {
  json j;
  try {
    j = parse_json(text);
  } catch (const ParseError& e) {
    VerifyReport r;
    r.failed.push_back(std::string("certificate parses as JSON: ") + e.what());
    return r;
  }
  try {
    Verifier v(j, cfg);
    return v.run();
  } catch (const std::exception& e) {
    VerifyReport r;
    r.failed.push_back(std::string("certificate is well formed: ") + e.what());
    return r;
  }
}

}  // namespace hgd
