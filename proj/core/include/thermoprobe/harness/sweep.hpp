#pragma once

#include "thermoprobe/harness/config.hpp"
#include "thermoprobe/harness/dataset.hpp"

namespace thermoprobe::harness {

// One row per (φ, δ, ΔT_L) point, φ-major. The operating point is maximum
// power (ε = 1) with X_L^T = ΔT_L/T² and X_P^T = X_L^T/δ. Failures land in
// the `error` column; the sweep never aborts on a single point.
Dataset run_sweep(const SweepConfig& config);

}  // namespace thermoprobe::harness
