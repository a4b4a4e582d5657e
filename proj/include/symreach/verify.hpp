#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "symreach/euler.hpp"

namespace symreach {

struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  bool passed = false;
  /// Largest observed violation measure (meaning depends on the property).
  double worst = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  bool all_passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240501;
  /// Multiplies every sample count; 1.0 gives the default sizes.
  double scale = 1.0;
  /// Replaces fz_of_triple inside the checks; lets a harness plant a fault.
  std::function<double(const EulerTriple&)> fz_override;
};

VerifyReport verify_suite(const VerifyOptions& options = {});

void print_report(std::ostream& os, const VerifyReport& report);

}  // namespace symreach
