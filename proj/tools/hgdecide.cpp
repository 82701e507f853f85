#include "hgd/corpus.hpp"
#include "hgd/document.hpp"
#include "hgd/gammacanon.hpp"
#include "hgd/recognizers.hpp"
#include "hgd/sequence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hgd;

namespace {

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot write " + path);
  out << text;
}

struct Caps {
  long precision = 0;
  std::int64_t scan = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--precision-cap", precision, "Largest working precision in bits (overrides HGD_PRECISION_CAP)");
    cmd->add_option("--scan-cap", scan, "Largest number of terms scanned (overrides HGD_SCAN_CAP)");
  }
  EngineConfig config() const {
    EngineConfig cfg = EngineConfig::from_environment();
    if (precision > 0) cfg.precision_cap_bits = precision;
    if (scan > 0) cfg.scan_cap = scan;
    return cfg;
  }
};

std::optional<Mode> parse_mode(const std::string& s) {
  if (s == "auto") return Mode::Auto;
  if (s == "unconditional") return Mode::Unconditional;
  if (s == "conditional") return Mode::Conditional;
  return std::nullopt;
}

struct DecideArgs {
  std::string file;
  std::string mode;
  std::string out;
  bool no_timing = false;
  bool galois_norm = false;
  bool no_degeneration = false;
  Caps caps;
};

ConditionalOptions conditional_options(const DecideArgs& a) {
  ConditionalOptions opt;
  opt.galois_norm = a.galois_norm;
  opt.identity.nesterenko_degeneration = !a.no_degeneration;
  return opt;
}

int cmd_decide(const DecideArgs& a) {
  InstanceDocument doc = parse_instance(read_input(a.file));
  if (!a.mode.empty()) doc.mode = *parse_mode(a.mode);
  Decision d = decide(doc, a.caps.config(), conditional_options(a));
  write_output(a.out, certificate_json(d, !a.no_timing));
  std::cerr << d.verdict.str() << " via " << d.procedure << " procedure\n";
  return exit_code(d.verdict);
}

int cmd_eval(const std::string& file, std::int64_t terms, const Caps& caps) {
  InstanceDocument doc = parse_instance(read_input(file));
  EngineConfig cfg = caps.config();
  if (terms > cfg.scan_cap) throw ResourceError("--terms exceeds the scan cap");
  SequenceScanner s(doc.instance);
  for (std::int64_t n = 0; n < terms; ++n) {
    if (n > 0) s.advance();
    std::cout << "u_" << n << " = " << s.value() << "\n";
  }
  return 0;
}

int cmd_oracle(const std::string& file, std::int64_t upto, const Caps& caps) {
  InstanceDocument doc = parse_instance(read_input(file));
  BruteForceResult r = brute_force(doc.instance, upto, caps.config());
  std::cout << to_string(doc.instance.problem) << " t = " << doc.instance.t << ": " << r.str() << "\n";
  return 0;
}

int cmd_canon(const std::string& file, long bits, const Caps& caps) {
  InstanceDocument doc = parse_instance(read_input(file));
  EngineConfig cfg = caps.config();
  CanonicalConstant C = limit_constant(doc.instance, cfg);
  std::cout << "tuple: " << C.str() << "\n";
  std::cout << "enclosure (" << bits << " bits): " << C.enclose(bits, cfg.precision_cap_bits).str(40) << "\n";
  return 0;
}

void describe_polynomial(const IntPoly& f, const EngineConfig& cfg) {
  std::cout << "f = " << f.str() << "\n";
  Factorization fac = factor_over_q(f, cfg);
  for (const auto& fi : fac.factors) {
    std::cout << "  factor " << fi.poly.str();
    if (fi.multiplicity > 1) std::cout << " ^" << fi.multiplicity;
    std::cout << "  [" << to_string(fi.shape) << "]";
    if (fi.degree() >= 2) {
      std::cout << "  radical family: " << check_radical_family(fi.poly, cfg).str();
      if (auto c = recognize_classC(fi.poly))
        std::cout << "  class C: rho = " << c->rho << ", g = " << c->g.str();
      else
        std::cout << "  class C: no";
    }
    std::cout << "\n";
  }
  if (!f.is_monic()) {
    std::cout << "Assumption 1: not checked (f is not monic)\n";
    return;
  }
  Assumption1Result r = check_assumption1(f, cfg);
  std::cout << r.message() << "\n";
  if (r.holds) {
    std::string check = validate_matching(r.factorization, r.certificate);
    for (const auto& pr : r.certificate.pairs) {
      std::cout << "  pair " << pr.u << " + " << pr.v << " = " << pr.k << ", rho = " << pr.rho();
      if (pr.w) std::cout << ", w = " << pr.w->str();
      std::cout << "\n";
    }
    std::cout << "  matching " << (check.empty() ? "validated" : "INVALID: " + check) << "\n";
  }
}

int cmd_recognize(const std::string& arg, const Caps& caps) {
  EngineConfig cfg = caps.config();
  std::string text = arg;
  if (arg == "-" || fs::exists(arg)) text = read_input(arg);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    InstanceDocument doc = parse_instance(text);
    std::cout << "p: ";
    describe_polynomial(doc.instance.p, cfg);
    std::cout << "q: ";
    describe_polynomial(doc.instance.q, cfg);
    return 0;
  }
  describe_polynomial(parse_int_poly(text), cfg);
  return 0;
}

struct CorpusArgs {
  std::uint64_t seed = 1;
  std::size_t count = 10;
  std::vector<std::string> families;
  std::string out_dir = "corpus";
  bool decide = false;
  bool verify = false;
  bool no_timing = false;
  unsigned jobs = 0;
  Caps caps;
};

struct CorpusOutcome {
  std::string line;
  std::string certificate;
  int code = 0;
  bool verified = true;
};

int cmd_corpus(const CorpusArgs& a) {
  std::vector<Family> fams;
  for (const auto& name : a.families) {
    if (name == "all") {
      auto all = all_families();
      fams.insert(fams.end(), all.begin(), all.end());
      continue;
    }
    auto f = parse_family(name);
    if (!f) throw ParseError("unknown family '" + name + "'");
    fams.push_back(*f);
  }
  if (fams.empty()) fams = {Family::RationalRooted, Family::Gaussian, Family::QuadraticImaginary, Family::Mixed};
  auto docs = generate_corpus(a.seed, a.count, fams);
  fs::create_directories(a.out_dir);
  const int width = std::max<int>(4, static_cast<int>(std::to_string(docs.size()).size()));
  auto stem = [&](std::size_t i) {
    std::ostringstream os;
    os << "instance-" << std::setw(width) << std::setfill('0') << i;
    return os.str();
  };
  for (std::size_t i = 0; i < docs.size(); ++i)
    write_output((fs::path(a.out_dir) / (stem(i) + ".json")).string(), serialize_instance(docs[i]));
  std::cout << "wrote " << docs.size() << " instances to " << a.out_dir << "\n";
  if (!a.decide) return 0;

  const EngineConfig cfg = a.caps.config();
  std::vector<CorpusOutcome> results(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      CorpusOutcome& r = results[i];
      try {
        Decision d = decide(docs[i], cfg);
        r.certificate = certificate_json(d, !a.no_timing);
        r.code = exit_code(d.verdict);
        r.line = d.verdict.str();
        if (a.verify) {
          VerifyReport rep = verify_certificate(r.certificate, cfg);
          r.verified = rep.ok();
          if (!rep.ok()) r.line += "  VERIFY FAILED";
        }
      } catch (const Error& e) {
        r.code = exit_code(e);
        r.line = std::string("error: ") + e.what();
      }
    }
  };
  unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int failures = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& r = results[i];
    if (!r.certificate.empty())
      write_output((fs::path(a.out_dir) / (stem(i) + ".cert.json")).string(), r.certificate);
    if (r.code > 1 && r.code != 10 && r.code != 11) ++failures;
    if (!r.verified) ++failures;
    std::cout << stem(i) << "  exit " << r.code << "  " << r.line << "\n";
  }
  return failures ? 1 : 0;
}

int cmd_verify(const std::string& file, const Caps& caps) {
  VerifyReport rep = verify_certificate(read_input(file), caps.config());
  std::cout << rep.str();
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decides membership and threshold questions for hypergeometric sequences"};
  app.require_subcommand(1);

  DecideArgs da;
  auto* decide_cmd = app.add_subcommand("decide", "Decide an instance document and print its certificate");
  decide_cmd->add_option("file", da.file, "Instance document (- for stdin)")->required();
  decide_cmd->add_option("--mode", da.mode, "Override the document mode")
      ->check(CLI::IsMember({"auto", "unconditional", "conditional"}));
  decide_cmd->add_flag_callback("--conditional", [&]() { da.mode = "conditional"; }, "Same as --mode conditional");
  decide_cmd->add_option("-o,--out", da.out, "Write the certificate here instead of stdout");
  decide_cmd->add_flag("--no-timing", da.no_timing, "Leave the timing field out of the certificate");
  decide_cmd->add_flag("--galois-norm", da.galois_norm, "Also record the Galois norm of a conditional identity");
  decide_cmd->add_flag("--no-degeneration", da.no_degeneration,
                       "Do not use the Nesterenko shortcut on the conditional path");
  da.caps.add_to(decide_cmd);

  std::string file;
  std::int64_t terms = 10, upto = 10000;
  long bits = 128;
  Caps caps;
  auto* eval_cmd = app.add_subcommand("eval", "Print the first terms exactly");
  eval_cmd->add_option("file", file, "Instance document")->required();
  eval_cmd->add_option("--terms", terms, "Number of terms")->check(CLI::NonNegativeNumber);
  caps.add_to(eval_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force search over a prefix");
  oracle_cmd->add_option("file", file, "Instance document")->required();
  oracle_cmd->add_option("--upto", upto, "Last index searched")->check(CLI::NonNegativeNumber);
  caps.add_to(oracle_cmd);

  auto* canon_cmd = app.add_subcommand("canon", "Print the canonical tuple of the limit and an enclosure");
  canon_cmd->add_option("file", file, "Instance document")->required();
  canon_cmd->add_option("--bits", bits, "Enclosure precision")->check(CLI::PositiveNumber);
  caps.add_to(canon_cmd);

  std::string poly;
  auto* recognize_cmd = app.add_subcommand("recognize", "Factor a polynomial and test Assumption 1 and class C");
  recognize_cmd->add_option("poly", poly, "Polynomial text, a file holding one, or an instance document")->required();
  caps.add_to(recognize_cmd);

  CorpusArgs ca;
  auto* corpus_cmd = app.add_subcommand("corpus", "Generate seeded instance files, optionally deciding them");
  corpus_cmd->add_option("--seed", ca.seed, "Generator seed");
  corpus_cmd->add_option("--count", ca.count, "Number of instances");
  corpus_cmd->add_option("--family", ca.families,
                         "rational-rooted, gaussian, quadratic-imaginary, mixed, real-quadratic or all (repeatable)");
  corpus_cmd->add_option("--out-dir", ca.out_dir, "Directory for the instance files");
  corpus_cmd->add_flag("--decide", ca.decide, "Decide every instance and write certificates next to it");
  corpus_cmd->add_flag("--verify", ca.verify, "Replay every certificate (implies --decide)");
  corpus_cmd->add_flag("--no-timing", ca.no_timing, "Leave timing out of the certificates");
  corpus_cmd->add_option("-j,--jobs", ca.jobs, "Worker threads (default: hardware concurrency)");
  ca.caps.add_to(corpus_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Replay the claims of a certificate");
  verify_cmd->add_option("file", file, "Certificate document")->required();
  caps.add_to(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  try {
    if (*decide_cmd) return cmd_decide(da);
    if (*eval_cmd) return cmd_eval(file, terms, caps);
    if (*oracle_cmd) return cmd_oracle(file, upto, caps);
    if (*canon_cmd) return cmd_canon(file, bits, caps);
    if (*recognize_cmd) return cmd_recognize(poly, caps);
    if (*corpus_cmd) {
      if (ca.verify) ca.decide = true;
      return cmd_corpus(ca);
    }
    if (*verify_cmd) return cmd_verify(file, caps);
  } catch (const Error& e) {
    std::cerr << "hgdecide: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "hgdecide: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
