#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tangle::app {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Seeded randomized property sweeps over the library invariants.
std::vector<PropertyResult> run_property_sweeps(int trials, std::uint64_t seed);

}  // namespace tangle::app
