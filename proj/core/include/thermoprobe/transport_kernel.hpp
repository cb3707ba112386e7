#pragma once

#include <array>

#include "thermoprobe/onsager.hpp"
#include "thermoprobe/quadrature.hpp"
#include "thermoprobe/transmission.hpp"
#include "thermoprobe/transport_types.hpp"

namespace thermoprobe {

// Full 4×4 matrix from the Fermi-window moments of T_LP, T_LR, T_PL, T_PR.
// The equal pairs (L_21 = L_12, L_23 = L_14, L_41 = L_32, L_43 = L_34) are
// stored as separately computed values.
OnsagerMatrix assemble_onsager4(const TransmissionSet& transmission, double temperature,
                                double mu, const QuadratureOptions& options = {});

// Nonlinear Landauer-Büttiker particle, heat and energy currents. Used as an
// oracle for the linear-response pipeline.
CurrentVector landauer_currents(const TransmissionSet& transmission,
                                const ReservoirState& reservoirs,
                                const QuadratureOptions& options = {});

struct VoltageProbeReduction {
  OnsagerMatrix reduced;
  // X_P^V = c0 X_L^V + c1 X_L^T + c2 X_P^T keeps J_P^N = 0.
  std::array<double, 3> probe_voltage{};

  double probe_voltage_for(double voltage_left, double thermal_left,
                           double thermal_probe) const {
    return probe_voltage[0] * voltage_left + probe_voltage[1] * thermal_left +
           probe_voltage[2] * thermal_probe;
  }
};

struct ButtikerReduction {
  OnsagerMatrix reduced;
  // X_P^T = c0 X_L^V + c1 X_L^T keeps J_P^Q = 0.
  std::array<double, 2> probe_thermal{};

  double probe_thermal_for(double voltage_left, double thermal_left) const {
    return probe_thermal[0] * voltage_left + probe_thermal[1] * thermal_left;
  }
};

// Eliminates X_P^V under J_P^N = 0. Throws SingularElimination when L_33 = 0.
VoltageProbeReduction reduce_voltage_probe(const OnsagerMatrix& full);

// Eliminates X_P^T under J_P^Q = 0. Throws SingularElimination when L'_33 = 0.
ButtikerReduction reduce_buttiker(const OnsagerMatrix& voltage_probe);

struct BoundReport {
  // Effective two-force matrix (𝔏_11, 𝔏_12, 𝔏_21, 𝔏_22).
  double l11 = 0.0, l12 = 0.0, l21 = 0.0, l22 = 0.0;
  // 𝔏_11, 𝔏_22, 𝔏_11𝔏_22 + 𝔏_12𝔏_21 − (𝔏_12² − 𝔏_21²)
  std::array<double, 3> residuals{};
  std::array<bool, 3> pass{};

  bool all_pass() const { return pass[0] && pass[1] && pass[2]; }
};

inline constexpr double kBoundTolerance = -1e-9;

// Unitarity bounds on the voltage-probe matrix at temperature-bias ratio ξ.
BoundReport check_bounds(const OnsagerMatrix& voltage_probe, double xi,
                         double tolerance = kBoundTolerance);

// Same inequalities on the Büttiker-probe 2×2 matrix.
BoundReport check_buttiker_bounds(const OnsagerMatrix& buttiker,
                                  double tolerance = kBoundTolerance);

}  // namespace thermoprobe
