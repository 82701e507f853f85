#include "hgd/mpoly.hpp"

#include "hgd/errors.hpp"

#include <sstream>

namespace hgd {

namespace {

template <typename C, typename F>
std::string render(const MPoly<C>& p, const std::vector<std::string>& names, F coeff_str) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = coeff_str(c);
    bool neg = cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
    if (neg) cs = cs.substr(1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string v = i < names.size() ? names[i] : "X" + std::to_string(i);
      if (!mono.empty()) mono += "*";
      mono += e[i] == 1 ? v : v + "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << cs;
    } else if (cs == "1") {
      os << mono;
    } else {
      os << "(" << cs << ")*" << mono;
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const RatMPoly& p, const std::vector<std::string>& names) {
  return render(p, names, [](const BigRational& c) { return c.str(); });
}

std::string to_string(const TowerMPoly& p, const std::vector<std::string>& names) {
  return render(p, names, [](const TowerElem& c) { return c.str(); });
}

RatMPoly galois_norm_poly(const GaloisNormInput& input) {
  if (input.poly.is_zero()) throw DomainError("Galois norm of the zero polynomial");
  const auto& t = input.tower;
  auto auts = automorphisms(t);
  TowerMPoly acc(input.poly.nvars());
  acc.add_term(std::vector<int>(input.poly.nvars(), 0), TowerElem::one(t));
  for (const auto& s : auts) {
    TowerMPoly img = input.poly.map_coefficients([&](const TowerElem& c) { return apply(s, c); });
    acc = acc * img;
  }
  RatMPoly out(acc.nvars());
  for (const auto& [e, c] : acc.terms()) {
    if (!c.is_rational()) throw DomainError("internal error: Galois norm has an irrational coefficient");
    out.add_term(e, c.rational_value());
  }
  return out;
}

}  // namespace hgd
