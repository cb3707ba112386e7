#pragma once

#include <optional>

#include "thermoprobe/coefficients.hpp"
#include "thermoprobe/onsager.hpp"
#include "thermoprobe/transport_kernel.hpp"
#include "thermoprobe/transport_types.hpp"

namespace thermoprobe {

enum class Branch { Plus, Minus };
const char* to_string(Branch b);

inline constexpr double kHeatZeroBand = 1e-12;

// Heat currents with |J^Q| below `zero_band` count as zero.
Regime classify_regime(const CurrentVector& currents, double zero_band = kHeatZeroBand);

// Carnot bound for the heat-absorbing configuration `regime`.
double carnot_efficiency(const CurrentVector& currents, double delta_t_left,
                         double delta_t_probe, double temperature, Regime regime);
// J_P^Q = 0 limit.
double buttiker_carnot_efficiency(double delta_t_left, double temperature);

struct MaxPowerPoint {
  double voltage_star = 0.0;  // X_L^V*
  double p_max = 0.0;
};

// P = −T J_L^N X_L^V with J_L^N taken from the voltage-probe matrix.
double output_power(const OnsagerMatrix& voltage_probe, double temperature,
                    double voltage_left, double thermal_left, double thermal_probe);

MaxPowerPoint max_power(const OnsagerMatrix& voltage_probe, double temperature,
                        double thermal_left, double thermal_probe);

// Linear-response currents in the voltage-probe frame (J_P^N = 0). J_R^Q
// closes the energy balance: Σ_α J_α^Q = P.
CurrentVector voltage_probe_currents(const OnsagerMatrix& voltage_probe,
                                     double temperature, double mu,
                                     double voltage_left, double thermal_left,
                                     double thermal_probe);

struct OperatingConditions {
  double temperature = 1.0;
  double mu = 0.0;
  double thermal_left = 0.0;   // X_L^T
  double thermal_probe = 0.0;  // X_P^T
};

struct PerformancePoint {
  ForceVector forces;
  CurrentVector currents;
  Regime regime = Regime::Refrigerator;
  double power = 0.0;
  double p_max = 0.0;
  double power_gain = 0.0;  // ΔP
  double load = 0.0;        // ε
  Branch branch = Branch::Plus;
  std::optional<double> efficiency;             // η_m
  std::optional<double> efficiency_at_pmax;     // η_m(P_max)
  std::optional<double> carnot;                 // η_c,m
  std::optional<double> carnot_at_pmax;         // η_c,m(P_max)
};

// Evaluates the engine at X_L^V = ε X_L^V*. The regime is taken from the
// heat currents at this point; η fields stay empty for a refrigerator.
PerformancePoint evaluate_operating_point(const VoltageProbeReduction& reduction,
                                          const OperatingConditions& conditions,
                                          double load);
PerformancePoint evaluate_operating_point(const OnsagerMatrix& voltage_probe,
                                          const OperatingConditions& conditions,
                                          double load);

double efficiency_at_max_power(double x, double y, double d, double carnot_at_pmax);
double efficiency_at_max_power(const MeritSet& merit, double carnot_at_pmax);
double buttiker_efficiency_at_max_power(double x, double y, double carnot);

// ε(2 − ε)(y + 2d) / (2(y + d) − yε)
double normalized_efficiency(double load, double y, double d);
double buttiker_normalized_efficiency(double load, double y);

// ε± = 1 ± √(−ΔP)
double load_from_power_gain(double power_gain, Branch branch);
// ΔP = ε(2 − ε) − 1
double power_gain_from_load(double load);

double normalized_efficiency_at_power_gain(double power_gain, Branch branch, double y,
                                           double d);
double buttiker_normalized_efficiency_at_power_gain(double power_gain, Branch branch,
                                                    double y);

double efficiency_at_power_gain(double power_gain, Branch branch, double x, double y,
                                double d, double carnot);
double efficiency_at_power_gain(double power_gain, Branch branch, const MeritSet& merit,
                                double carnot);
double buttiker_efficiency_at_power_gain(double power_gain, Branch branch, double x,
                                         double y, double carnot);

struct BoundFunctions {
  double h_m = 0.0;  // d x / (x − 1)²
  double h = 0.0;    // x / (x − 1)²
  // y_m is confined between 0 and H_m; lower <= upper.
  double lower = 0.0;
  double upper = 0.0;
};

// Throws Pole at x = 1.
BoundFunctions bound_functions(double x, double d);

// True when y lies between 0 and H_m(x, d) within `tolerance`.
bool satisfies_figure_bound(double y, double x, double d, double tolerance = 1e-9);

double efficiency_bound(double x, double power_gain, Branch branch, double carnot);

}  // namespace thermoprobe
