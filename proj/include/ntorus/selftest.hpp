#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ntorus {

struct SelftestOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 1'000'000;  // per monomial test
  int gauss_points = 50;            // per random immersion
  double tolerance_scale = 1.0;     // multiplies every tolerance
};

struct SelftestItem {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SelftestReport {
  std::vector<SelftestItem> items;
  bool pass() const;
};

// Sphere monomial moments for n = 1..4 (in standard errors), the Gauss
// residual on three random immersions, and the tight checks on the
// Clifford, hexagonal and D4 tori.
SelftestReport run_selftest(const SelftestOptions& options);

}  // namespace ntorus
