#pragma once

#include <cstdint>
#include <string>

namespace cambrian {

struct VerifyOptions {
  int max_rank = 3;
  bool all = false;  // adds A_4 and the larger type-A sweeps
  std::uint64_t seed = 0;
  int samples = 10000;
};

struct VerifyResult {
  bool ok = true;
  std::string report;  // one PASS/FAIL line per check, deterministic
};

// Property suite over the small groups: group arithmetic laws, forcing
// closure, Cambrian counts and theorems, fan agreement, type-A patterns.
VerifyResult run_verify(const VerifyOptions& opt);

}  // namespace cambrian
