#include "hgd/config.hpp"

#include <cstdlib>
#include <string>

namespace hgd {

namespace {

template <typename T>
void read_positive(const char* name, T& out) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return;
  try {
    std::size_t used = 0;
    long long v = std::stoll(raw, &used);
    if (used == std::string(raw).size() && v > 0) out = static_cast<T>(v);
  } catch (...) {
  }
}

}  // namespace

EngineConfig EngineConfig::from_environment() {
  EngineConfig c;
  read_positive("HGD_PRECISION_CAP", c.precision_cap_bits);
  read_positive("HGD_SCAN_CAP", c.scan_cap);
  return c;
}

}  // namespace hgd
