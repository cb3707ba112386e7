#pragma once

#include <string>

#include "thermoprobe/harness/config.hpp"
#include "thermoprobe/harness/dataset.hpp"

namespace thermoprobe::harness {

enum class FigureId { Fig2, Fig3, Fig4, Fig5, Fig6 };
const char* to_string(FigureId id);  // "FIG2" ...
FigureId parse_figure(const std::string& text);  // accepts fig2 / FIG2

inline constexpr const char* kVersion = "1.0.0";

// Metadata shared by every dataset: generator, provenance, timestamp, the
// canonical parameter block and tolerances.
void stamp_metadata(Dataset& d, const SweepConfig& config);

Dataset run_figure(FigureId id, const SweepConfig& config);

// Sample points of the y_m = H_m(x_m) curve family and friends are cheap;
// the FIG6 pipeline assembles one Onsager matrix per φ and runs in parallel.
Dataset figure_bound_functions(const SweepConfig& config);
Dataset figure_efficiency_vs_load(const SweepConfig& config);
Dataset figure_efficiency_vs_power_gain(const SweepConfig& config);
Dataset figure_efficiency_bound(const SweepConfig& config);
Dataset figure_characteristic_parameters(const SweepConfig& config);

}  // namespace thermoprobe::harness
