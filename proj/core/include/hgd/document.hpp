#pragma once

#include "hgd/config.hpp"
#include "hgd/errors.hpp"
#include "hgd/schanuel.hpp"
#include "hgd/sequence.hpp"
#include "hgd/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hgd {

enum class Mode { Auto, Unconditional, Conditional };
std::string to_string(Mode m);

struct InstanceDocument {
  HGInstance instance;
  Mode mode = Mode::Auto;
};

// JSON: {"p": [...], "q": [...], "u0": "a/b", "t": "a/b", "problem": ..., "mode": ...}
// with ascending integer coefficients.  ParseError names the offending location.
InstanceDocument parse_instance(const std::string& text);
std::string serialize_instance(const InstanceDocument& doc);

struct Decision {
  InstanceDocument input;
  Verdict verdict;
  std::string procedure;  // "unconditional" or "conditional"
  std::string fallback;   // why auto mode left the unconditional procedure
  std::optional<ConditionalVerdict> conditional;
  double seconds = 0;
};

Decision decide(const InstanceDocument& doc, const EngineConfig& cfg = {}, const ConditionalOptions& opt = {});

// 0/1 positive/negative unconditional, 10/11 the same under Schanuel's conjecture.
int exit_code(const Verdict& v);
// 2 unsupported, 3 resource, 4 parse or invalid input.
int exit_code(const Error& e);

std::string certificate_json(const Decision& d, bool include_timing = true);

struct VerifyReport {
  std::vector<std::string> passed;
  std::vector<std::string> failed;
  bool ok() const { return failed.empty(); }
  std::string str() const;
};

// Re-checks the claims of a certificate: witnesses and scans exactly, bounds
// against their Cauchy conditions, constants against the symbolic equality
// test, their enclosures and the partial product.
VerifyReport verify_certificate(const std::string& json, const EngineConfig& cfg = {});

}  // namespace hgd
