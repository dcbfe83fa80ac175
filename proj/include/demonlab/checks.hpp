#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demonlab/analytics.hpp"

namespace demonlab {

struct CheckOptions {
  // Quick mode runs the statistical checks at 1e5 slots and widens their
  // tolerance from 3 to 4 standard errors.
  bool quick = false;
  std::uint64_t seed = 1234567;
  // Closed form under test; replaceable to confirm the suite catches faults.
  PowerFunction closed_form = closed_form_power;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckSummary {
  std::vector<CheckResult> results;
  bool all_passed() const;
  const CheckResult* find(const std::string& name) const;
};

CheckSummary run_checks(const CheckOptions& options = {});

}  // namespace demonlab
