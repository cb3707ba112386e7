#pragma once

#include <optional>

#include "thermoprobe/onsager.hpp"

namespace thermoprobe {

// Heat-absorbing configuration of the engine. Refrigerator is produced by
// regime classification only; merit and efficiency routines reject it.
enum class Regime { L, P, LP, Refrigerator };
const char* to_string(Regime r);

struct SeebeckSet {
  double ll_plus = 0.0;   // S_LL(+B)
  double lp_plus = 0.0;   // S_LP(+B)
  double ll_minus = 0.0;  // S_LL(−B)
  double lp_minus = 0.0;  // S_LP(−B)
};

struct ConductanceSet {
  double g_ll = 0.0;
  double k_ll = 0.0;
  double k_pp = 0.0;
  double k_lp = 0.0;
  double k_pl = 0.0;
};

struct TransportCoefficients {
  FieldSign field = FieldSign::Plus;
  double temperature = 1.0;
  // Built from a Büttiker 2×2 matrix: S_LP and the probe conductances vanish.
  bool buttiker_limit = false;
  SeebeckSet seebeck;
  ConductanceSet conductance;
  double peltier_ll = 0.0;  // Π_LL(B) = T S_LL(−B)
  double peltier_pl = 0.0;  // Π_PL(B) = T S_LP(−B)
  // Π recomputed as J^Q/J_L^N from the matrix at unit X_L^V.
  double peltier_ll_flux = 0.0;
  double peltier_pl_flux = 0.0;

  double peltier_residual() const;
};

// S from the +B matrix alone: S(−B) uses the transposed entries.
SeebeckSet seebeck(const OnsagerMatrix& voltage_probe, double temperature);

// |S(−B) from the +B entries − S(+B) of the reversed pipeline|, max over LL/LP.
double seebeck_reversal_mismatch(const SeebeckSet& plus,
                                 const OnsagerMatrix& voltage_probe_reversed,
                                 double temperature);

ConductanceSet conductances(const OnsagerMatrix& voltage_probe, double temperature);

// Accepts VoltageProbe3 or Buttiker2 matrices.
TransportCoefficients transport_coefficients(const OnsagerMatrix& matrix,
                                             double temperature);

// Z_m^θ T for θ = A, A′, A″, B, B′, C, C′.
struct MeritComponents {
  double a = 0.0;
  double a_prime = 0.0;
  double a_double_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
  double c = 0.0;
  double c_prime = 0.0;
};

// Raw θ products before division by the regime conductance.
MeritComponents theta_products(const TransportCoefficients& coeffs);

// K_LL, K_PP or K_LP depending on the regime.
double regime_conductance(const TransportCoefficients& coeffs, Regime regime);

MeritComponents merit_components(const TransportCoefficients& coeffs,
                                 double temperature, Regime regime);

struct ButtikerMerit {
  double x = 0.0;   // S_LL(B) / S_LL(−B)
  double y = 0.0;   // G S_LL(B) S_LL(−B) T / K_LL
  double zt = 0.0;  // G S_LL(B)² T / K_LL
};

struct MeritSet {
  Regime regime = Regime::L;
  double delta = 0.0;
  MeritComponents z;
  double r = 0.0;
  double y = 0.0;
  double x = 0.0;
  double d = 0.0;
  // (2δZ^{A₁} + Z^{B₁} + δ²Z^{C₁})T with time-symmetric products
  double time_symmetric_figure = 0.0;
  std::optional<ButtikerMerit> buttiker;
};

// Characteristic parameter d_m for the regime.
double characteristic_parameter(const ConductanceSet& k, double delta, Regime regime);

MeritSet merit_set(const TransportCoefficients& coeffs, double delta, double temperature,
                   Regime regime, bool with_buttiker = false);

ButtikerMerit buttiker_merit(const TransportCoefficients& coeffs, double temperature);

// Reduced Büttiker-limit expressions: r = δ² Z_L^C T, y = δ² Z_L^{C′} T,
// x = S_LL(B)/S_LL(−B), d = δ².
MeritSet buttiker_merit_set(const TransportCoefficients& coeffs, double delta,
                            double temperature);

}  // namespace thermoprobe
