#include <doctest.h>

#include "tangle/app/verify.hpp"

using namespace tangle::app;

TEST_SUITE("properties") {
  TEST_CASE("randomized sweeps hold over 1000 trials") {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto results = run_property_sweeps(1000, seed);
      CHECK(results.size() >= 8);
      for (const auto& r : results) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
      }
    }
  }

  TEST_CASE("sweeps are reproducible") {
    const auto a = run_property_sweeps(10, 5), b = run_property_sweeps(10, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].detail == b[i].detail);
  }
}
