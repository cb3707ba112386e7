#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "thermoprobe/coefficients.hpp"
#include "thermoprobe/dot_ring.hpp"
#include "thermoprobe/performance.hpp"
#include "thermoprobe/quadrature.hpp"

namespace thermoprobe::harness {

// Inclusive linear grid. Points are lo + (hi − lo)·i/(count − 1), which hits
// both ends and any exactly representable interior value.
struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  std::vector<double> values() const;
  void validate(const std::string& field) const;
};

enum class OutputFormat { Csv, Json };
const char* to_string(OutputFormat f);

inline constexpr const char* kWorkersEnv = "THERMOPROBE_WORKERS";

struct SweepConfig {
  DotRingModel model = canonical_dot_ring();
  double temperature = kCanonicalTemperature;
  double mu = kCanonicalMu;

  GridSpec phi{0.05, 6.233185307179586, 80};
  GridSpec delta{0.05, 2.0, 80};
  GridSpec epsilon{0.01, 1.99, 199};
  GridSpec power_gain{-1.0, 0.0, 101};
  GridSpec x{-10.0, 10.0, 201};
  // Explicit φ points; when non-empty they replace the φ grid.
  std::vector<double> phi_values;

  std::vector<double> phi_points() const;

  // ΔT_L / T values; X_P^T follows from δ = X_L^T / X_P^T.
  std::vector<double> delta_t_left{0.01};
  std::vector<double> fig2_d_values{-5.0, -3.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 3.0, 5.0};
  std::vector<double> d_values{0.1, 0.5, 1.0, 3.0, 5.0};
  std::vector<double> y_values{0.5, 1.0, 2.0, 5.0, 10.0, 50.0};

  std::vector<Regime> regime_filter{Regime::L, Regime::P, Regime::LP, Regime::Refrigerator};
  Branch branch = Branch::Plus;
  QuadratureOptions quadrature;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path = "-";
  int workers = 1;
  double tolerance = 1e-9;
  std::string timestamp = "1970-01-01T00:00:00Z";

  // Throws ValidationError naming the offending field.
  void validate() const;

  nlohmann::ordered_json to_json() const;
  // Missing keys keep their defaults; unknown keys are rejected.
  static SweepConfig from_json(const nlohmann::json& j);
};

// Defaults, then the file (if any), then THERMOPROBE_WORKERS when the file
// does not pin a worker count. SOURCE_DATE_EPOCH, when set, supplies the
// timestamp unless the file pins one.
SweepConfig load_config(const std::filesystem::path* path);

Branch parse_branch(const std::string& text);
OutputFormat parse_format(const std::string& text);
Regime parse_regime(const std::string& text);

// FNV-1a over the canonical JSON dump; stable across runs and platforms.
std::string config_fingerprint(const SweepConfig& config);

}  // namespace thermoprobe::harness
