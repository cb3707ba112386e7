#pragma once

#include <string>
#include <vector>

#include "thermoprobe/harness/config.hpp"
#include "thermoprobe/harness/dataset.hpp"

namespace thermoprobe::harness {

struct ParameterPoint {
  double phi = 0.0;
  double delta = 1.0;
  double delta_t_left = 0.01;  // in units of T
};

// L4, L′ and L″ at +B and −B, one row per entry.
Dataset onsager_dump(const SweepConfig& config, const ParameterPoint& point);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;  // the measured residual or margin
  std::string detail;
};

// Invariant suite on one parameter point. Never throws on a numerical
// failure; a failing computation is reported as a failed check.
std::vector<CheckResult> run_checks(const SweepConfig& config, const ParameterPoint& point);

Dataset check_report(const SweepConfig& config, const ParameterPoint& point,
                     const std::vector<CheckResult>& results);

}  // namespace thermoprobe::harness
