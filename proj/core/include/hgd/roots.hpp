#pragma once

#include "hgd/factor.hpp"
#include "hgd/quadelem.hpp"
#include "hgd/tower.hpp"

#include <optional>
#include <vector>

namespace hgd {

struct QuadRoot {
  QuadElem value;
  int multiplicity = 1;
};

// Roots of a polynomial splitting into linear and quadratic factors over Q.
// field_d is the common radicand of all irrational roots, 0 if they use
// different fields, and -1 (a placeholder context) if all roots are rational.
struct RootMultiset {
  std::vector<QuadRoot> entries;
  BigInt field_d = -1;
  bool mixed_fields() const { return field_d == 0; }
  int total_multiplicity() const;
};

// nullopt means NotSplitting.  Throws DomainError for non-monic input.
std::optional<RootMultiset> roots_quadratic(const IntPoly& f, const EngineConfig& cfg = {});
std::optional<RootMultiset> roots_quadratic(const Factorization& fac);

// What a factor's roots need from a tower.
TowerRequest tower_request(const FactorInfo& fi);
TowerRequest tower_request(const Factorization& fac);

// Exact roots of an irreducible factor in t, ordered like fi.roots.  Verified
// by expanding the product of linear factors.  UnsupportedError when the
// factor's shape has no representation.
std::vector<TowerElem> roots_in_tower(const FactorInfo& fi, const TowerPtr& t);

}  // namespace hgd
