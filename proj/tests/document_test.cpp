#include "hgd/corpus.hpp"
#include "hgd/document.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

using namespace hgd;
using nlohmann::json;

namespace {

const char* kExample = R"({"p": [13, -4, 1], "q": [5, -4, 1], "u0": "1", "t": "1/13", "problem": "membership"})";

std::string parse_error(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, ReadsInstance) {
  InstanceDocument d = parse_instance(kExample);
  EXPECT_EQ(d.instance.p, (IntPoly{13, -4, 1}));
  EXPECT_EQ(d.instance.t, BigRational(1, 13));
  EXPECT_EQ(d.instance.problem, Problem::Membership);
  EXPECT_EQ(d.mode, Mode::Auto);
  InstanceDocument big = parse_instance(
      R"({"p": ["123456789012345678901234567890", 1], "q": [1, 1], "u0": "2", "t": 3, "problem": "threshold", "mode": "conditional"})");
  EXPECT_EQ(big.instance.p.coeff(0), parse_bigint("123456789012345678901234567890"));
  EXPECT_EQ(big.instance.problem, Problem::Threshold);
  EXPECT_EQ(big.mode, Mode::Conditional);
}

TEST(Parse, ErrorsNameTheLocation) {
  EXPECT_NE(parse_error(R"({"p": [1], "q": [5, "x", 1], "u0": "1", "t": "1", "problem": "membership"})")
                .find("/q/1: not an integer literal"),
            std::string::npos);
  EXPECT_NE(parse_error(R"({"p": [1], "q": [1], "u0": "1/0", "t": "1", "problem": "membership"})").find("/u0"),
            std::string::npos);
  EXPECT_NE(parse_error(R"({"p": [1], "q": [1], "u0": "1", "problem": "membership"})").find("/t"), std::string::npos);
  EXPECT_NE(parse_error(R"({"p": [1], "q": [1], "u0": "1", "t": "1", "problem": "sometimes"})").find("/problem"),
            std::string::npos);
  EXPECT_NE(parse_error(R"({"p": [1], "q": [1], )"), "");
}

TEST(Parse, RoundTrip) {
  InstanceDocument d = parse_instance(kExample);
  InstanceDocument e = parse_instance(serialize_instance(d));
  EXPECT_EQ(e.instance.p, d.instance.p);
  EXPECT_EQ(e.instance.q, d.instance.q);
  EXPECT_EQ(e.instance.u0, d.instance.u0);
  EXPECT_EQ(e.instance.t, d.instance.t);
  EXPECT_EQ(serialize_instance(e), serialize_instance(d));
}

TEST(Certificate, VerifiesAndDetectsTampering) {
  Decision d = decide(parse_instance(kExample));
  EXPECT_EQ(d.procedure, "unconditional");
  EXPECT_EQ(exit_code(d.verdict), 0);
  std::string cert = certificate_json(d, false);
  json j = json::parse(cert);
  EXPECT_EQ(j["verdict"]["witness"], 2);
  VerifyReport r = verify_certificate(cert);
  EXPECT_TRUE(r.ok()) << r.str();

  j["verdict"]["witness"] = 3;
  EXPECT_FALSE(verify_certificate(j.dump()).ok());
}

TEST(Certificate, NegativeVerdictsVerify) {
  for (const std::string t : {"1/14", "1/26"}) {
    json in = json::parse(kExample);
    in["t"] = t;
    if (t == "1/26") in["problem"] = "threshold";
    Decision d = decide(parse_instance(in.dump()));
    EXPECT_EQ(exit_code(d.verdict), 1);
    VerifyReport r = verify_certificate(certificate_json(d));
    EXPECT_TRUE(r.ok()) << r.str();
  }
}

TEST(Certificate, TimingIsOptional) {
  Decision d = decide(parse_instance(kExample));
  EXPECT_TRUE(json::parse(certificate_json(d, true)).dump().find("seconds") != std::string::npos);
  EXPECT_EQ(certificate_json(d, false), certificate_json(decide(parse_instance(kExample)), false));
}

TEST(ExitCodes, Categories) {
  EXPECT_EQ(exit_code(UnsupportedError("x")), 2);
  EXPECT_EQ(exit_code(ResourceError("x")), 3);
  EXPECT_EQ(exit_code(ParseError("x")), 4);
  EXPECT_EQ(exit_code(DomainError("x")), 4);
  Verdict v;
  v.outcome = Verdict::Outcome::Holds;
  v.conditionality = Conditionality::ConditionalOnSchanuel;
  EXPECT_EQ(exit_code(v), 10);
  v.outcome = Verdict::Outcome::NotMember;
  EXPECT_EQ(exit_code(v), 11);
}

TEST(Decide, AutoFallsBackToConditional) {
  Decision d = decide(parse_instance(
      R"({"p": [-1, -2, 1], "q": [-4, -2, 1], "u0": "1", "t": "-4", "problem": "membership"})"));
  EXPECT_EQ(d.procedure, "conditional");
  EXPECT_FALSE(d.fallback.empty());
  EXPECT_EQ(exit_code(d.verdict), 11);
  EXPECT_TRUE(verify_certificate(certificate_json(d, false)).ok());
}

TEST(Decide, UnconditionalModeRefusesRealQuadratic) {
  EXPECT_THROW(decide(parse_instance(
                   R"({"p": [-1, -2, 1], "q": [-4, -2, 1], "u0": "1", "t": "-4", "problem": "membership",
                       "mode": "unconditional"})")),
               UnsupportedError);
}

TEST(Corpus, Deterministic) {
  for (Family f : all_families()) {
    auto a = generate_corpus(99, 12, f), b = generate_corpus(99, 12, f);
    ASSERT_EQ(a.size(), 12u);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(serialize_instance(a[i]), serialize_instance(b[i]));
      EXPECT_TRUE(a[i].instance.monic());
      EXPECT_NO_THROW(a[i].instance.validate());
    }
  }
  EXPECT_NE(serialize_instance(generate_corpus(1, 1, Family::Gaussian)[0]),
            serialize_instance(generate_corpus(2, 1, Family::Gaussian)[0]));
}

TEST(Corpus, FamilyNames) {
  for (Family f : all_families()) EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_FALSE(parse_family("no-such-family").has_value());
}
