#pragma once

#include <cstdint>

namespace hgd {

struct EngineConfig {
  long precision_cap_bits = 65536;
  std::int64_t scan_cap = 1000000;
  long factor_budget = 2000000;  // subset candidates tried by the factorizer

  // Reads HGD_PRECISION_CAP and HGD_SCAN_CAP; missing or malformed values keep defaults.
  static EngineConfig from_environment();
};

}  // namespace hgd
