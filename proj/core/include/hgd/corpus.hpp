#pragma once

#include "hgd/document.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hgd {

enum class Family { RationalRooted, Gaussian, QuadraticImaginary, Mixed, RealQuadratic };
std::string to_string(Family f);
std::optional<Family> parse_family(const std::string& name);
std::vector<Family> all_families();

// Deterministic pseudo-random instances: the same seed, count and family
// always give the same documents.  Every instance is monic; harmonious
// pairs dominate, with divergent, shrinking and zero-tail cases mixed in,
// and targets drawn from exact terms, perturbed terms and approximations of
// the limit.
std::vector<InstanceDocument> generate_corpus(std::uint64_t seed, std::size_t count, Family family);

// Round-robin over several families.
std::vector<InstanceDocument> generate_corpus(std::uint64_t seed, std::size_t count,
                                              const std::vector<Family>& families);

}  // namespace hgd
