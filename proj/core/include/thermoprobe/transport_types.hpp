#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace thermoprobe {

// Reduced units throughout: h = e = k_B = 1, energies in k_B T_R.

enum class Terminal { L = 0, P = 1, R = 2 };
inline constexpr std::array<Terminal, 3> kTerminals = {Terminal::L, Terminal::P,
                                                       Terminal::R};
inline constexpr int index(Terminal t) { return static_cast<int>(t); }
const char* to_string(Terminal t);

enum class FieldSign { Plus, Minus };
inline constexpr FieldSign reversed(FieldSign s) {
  return s == FieldSign::Plus ? FieldSign::Minus : FieldSign::Plus;
}
const char* to_string(FieldSign s);

// Offsets of the L and P reservoirs; R is the reference and carries none.
struct ReservoirState {
  double temperature = 1.0;
  double mu = 0.0;
  double delta_t_left = 0.0;
  double delta_mu_left = 0.0;
  double delta_t_probe = 0.0;
  double delta_mu_probe = 0.0;

  double temperature_of(Terminal t) const;
  double mu_of(Terminal t) const;

  // Human-readable notes for offsets exceeding `threshold` relative to T.
  std::vector<std::string> linear_response_warnings(double threshold = 0.1) const;
};

// Generalized forces conjugate to (J_L^N, J_L^Q, J_P^N, J_P^Q).
struct ForceVector {
  double voltage_left = 0.0;   // ΔV_L / T
  double thermal_left = 0.0;   // ΔT_L / T²
  double voltage_probe = 0.0;  // ΔV_P / T
  double thermal_probe = 0.0;  // ΔT_P / T²

  static ForceVector from_reservoirs(const ReservoirState& r);

  // ξ = X_P^T / X_L^T; empty when X_L^T = 0.
  std::optional<double> xi() const;
  // δ = X_L^T / X_P^T; empty when X_P^T = 0.
  std::optional<double> delta() const;

  std::array<double, 4> as_array() const {
    return {voltage_left, thermal_left, voltage_probe, thermal_probe};
  }
};

struct CurrentVector {
  std::array<double, 3> particle{};  // J^N indexed by Terminal
  std::array<double, 3> heat{};      // J^Q
  std::array<double, 3> energy{};    // J^U

  double particle_of(Terminal t) const { return particle[index(t)]; }
  double heat_of(Terminal t) const { return heat[index(t)]; }
  double energy_of(Terminal t) const { return energy[index(t)]; }

  double particle_sum() const { return particle[0] + particle[1] + particle[2]; }
  double energy_sum() const { return energy[0] + energy[1] + energy[2]; }
};

}  // namespace thermoprobe
