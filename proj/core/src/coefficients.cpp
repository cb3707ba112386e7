#include "thermoprobe/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {
namespace {

void require_conductor(double l11) {
  if (!(l11 > 0.0)) {
    throw Error(ErrorKind::DegenerateConductor, "L_11 must be positive");
  }
}

void require_engine_regime(Regime regime) {
  if (regime == Regime::Refrigerator) {
    throw Error(ErrorKind::Domain, "merit parameters are undefined for a refrigerator");
  }
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::L: return "L";
    case Regime::P: return "P";
    case Regime::LP: return "LP";
    case Regime::Refrigerator: return "REFRIGERATOR";
  }
  return "?";
}

double TransportCoefficients::peltier_residual() const {
  return std::max(std::abs(peltier_ll - peltier_ll_flux),
                  std::abs(peltier_pl - peltier_pl_flux));
}

SeebeckSet seebeck(const OnsagerMatrix& voltage_probe, double temperature) {
  if (voltage_probe.rank() != OnsagerRank::VoltageProbe3) {
    throw ValidationError("onsager.rank", "seebeck expects a VPROBE3 matrix");
  }
  auto L = [&](int i, int j) { return voltage_probe.entry(i, j); };
  require_conductor(L(1, 1));
  const double denom = temperature * L(1, 1);
  return {L(1, 2) / denom, L(1, 3) / denom, L(2, 1) / denom, L(3, 1) / denom};
}

double seebeck_reversal_mismatch(const SeebeckSet& plus,
                                 const OnsagerMatrix& voltage_probe_reversed,
                                 double temperature) {
  const SeebeckSet rev = seebeck(voltage_probe_reversed, temperature);
  return std::max(std::abs(plus.ll_minus - rev.ll_plus),
                  std::abs(plus.lp_minus - rev.lp_plus));
}

ConductanceSet conductances(const OnsagerMatrix& voltage_probe, double temperature) {
  if (voltage_probe.rank() != OnsagerRank::VoltageProbe3) {
    throw ValidationError("onsager.rank", "conductances expects a VPROBE3 matrix");
  }
  auto L = [&](int i, int j) { return voltage_probe.entry(i, j); };
  require_conductor(L(1, 1));
  const double t2l = temperature * temperature * L(1, 1);
  ConductanceSet k;
  k.g_ll = L(1, 1) / temperature;
  k.k_ll = (L(2, 2) * L(1, 1) - L(2, 1) * L(1, 2)) / t2l;
  k.k_pp = (L(3, 3) * L(1, 1) - L(3, 1) * L(1, 3)) / t2l;
  k.k_lp = (L(1, 1) * L(2, 3) - L(2, 1) * L(1, 3)) / t2l;
  k.k_pl = (L(1, 1) * L(3, 2) - L(1, 2) * L(3, 1)) / t2l;
  return k;
}

TransportCoefficients transport_coefficients(const OnsagerMatrix& matrix,
                                             double temperature) {
  if (!(temperature > 0.0)) throw Error(ErrorKind::Domain, "temperature must be positive");
  TransportCoefficients c;
  c.field = matrix.field();
  c.temperature = temperature;
  auto L = [&](int i, int j) { return matrix.entry(i, j); };

  switch (matrix.rank()) {
    case OnsagerRank::VoltageProbe3: {
      c.seebeck = seebeck(matrix, temperature);
      c.conductance = conductances(matrix, temperature);
      c.peltier_ll_flux = L(2, 1) / L(1, 1);
      c.peltier_pl_flux = L(3, 1) / L(1, 1);
      break;
    }
    case OnsagerRank::Buttiker2: {
      require_conductor(L(1, 1));
      c.buttiker_limit = true;
      const double denom = temperature * L(1, 1);
      c.seebeck = {L(1, 2) / denom, 0.0, L(2, 1) / denom, 0.0};
      c.conductance.g_ll = L(1, 1) / temperature;
      c.conductance.k_ll =
          (L(2, 2) * L(1, 1) - L(2, 1) * L(1, 2)) / (temperature * temperature * L(1, 1));
      c.peltier_ll_flux = L(2, 1) / L(1, 1);
      c.peltier_pl_flux = 0.0;
      break;
    }
    case OnsagerRank::Full4:
      throw ValidationError("onsager.rank", "reduce the FULL4 matrix before use");
  }
  c.peltier_ll = temperature * c.seebeck.ll_minus;
  c.peltier_pl = temperature * c.seebeck.lp_minus;
  return c;
}

MeritComponents theta_products(const TransportCoefficients& coeffs) {
  const SeebeckSet& s = coeffs.seebeck;
  const double g = coeffs.conductance.g_ll;
  return {s.ll_plus * s.lp_plus * g,  s.ll_plus * s.lp_minus * g,
          s.lp_plus * s.ll_minus * g, s.lp_plus * s.lp_plus * g,
          s.lp_plus * s.lp_minus * g, s.ll_plus * s.ll_plus * g,
          s.ll_plus * s.ll_minus * g};
}

double regime_conductance(const TransportCoefficients& coeffs, Regime regime) {
  require_engine_regime(regime);
  switch (regime) {
    case Regime::L: return coeffs.conductance.k_ll;
    case Regime::P: return coeffs.conductance.k_pp;
    default: return coeffs.conductance.k_lp;
  }
}

MeritComponents merit_components(const TransportCoefficients& coeffs,
                                 double temperature, Regime regime) {
  const double k = regime_conductance(coeffs, regime);
  if (k == 0.0 || !std::isfinite(k)) {
    throw Error(ErrorKind::RegimeUndefined,
                std::string("regime conductance vanishes for m=") + to_string(regime));
  }
  const MeritComponents theta = theta_products(coeffs);
  const double f = temperature / k;
  return {theta.a * f,       theta.a_prime * f, theta.a_double_prime * f,
          theta.b * f,       theta.b_prime * f, theta.c * f,
          theta.c_prime * f};
}

double characteristic_parameter(const ConductanceSet& k, double delta, Regime regime) {
  require_engine_regime(regime);
  const double d2 = delta * delta;
  switch (regime) {
    case Regime::L:
      return delta * (k.k_pl + k.k_lp) / k.k_ll + k.k_pp / k.k_ll + d2;
    case Regime::P:
      return delta * (k.k_pl + k.k_lp) / k.k_pp + d2 * k.k_ll / k.k_pp + 1.0;
    default:
      return (delta * k.k_pl + k.k_pp) / k.k_lp + d2 * k.k_ll / k.k_lp + delta;
  }
}

ButtikerMerit buttiker_merit(const TransportCoefficients& coeffs, double temperature) {
  const SeebeckSet& s = coeffs.seebeck;
  const ConductanceSet& k = coeffs.conductance;
  if (k.k_ll == 0.0) {
    throw Error(ErrorKind::RegimeUndefined, "K_LL vanishes");
  }
  if (s.ll_minus == 0.0) {
    throw Error(ErrorKind::AsymmetryUndefined, "S_LL(-B) vanishes");
  }
  return {s.ll_plus / s.ll_minus, k.g_ll * s.ll_plus * s.ll_minus * temperature / k.k_ll,
          k.g_ll * s.ll_plus * s.ll_plus * temperature / k.k_ll};
}

MeritSet merit_set(const TransportCoefficients& coeffs, double delta, double temperature,
                   Regime regime, bool with_buttiker) {
  if (!std::isfinite(delta)) throw Error(ErrorKind::Domain, "delta must be finite");
  MeritSet m;
  m.regime = regime;
  m.delta = delta;
  m.z = merit_components(coeffs, temperature, regime);
  const MeritComponents& z = m.z;
  m.r = 2.0 * delta * z.a + z.b + delta * delta * z.c;
  m.y = delta * (z.a_prime + z.a_double_prime) + z.b_prime + delta * delta * z.c_prime;
  if (m.y == 0.0) {
    throw Error(ErrorKind::AsymmetryUndefined, "generalized figure of merit y_m vanishes");
  }
  m.x = m.r / m.y;
  m.d = characteristic_parameter(coeffs.conductance, delta, regime);
  // A₁, B₁, C₁ coincide with A, B, C built from the +B coefficients.
  m.time_symmetric_figure = (2.0 * delta * z.a + z.b + delta * delta * z.c);
  if (with_buttiker) m.buttiker = buttiker_merit(coeffs, temperature);
  return m;
}

MeritSet buttiker_merit_set(const TransportCoefficients& coeffs, double delta,
                            double temperature) {
  const ButtikerMerit b = buttiker_merit(coeffs, temperature);
  MeritSet m;
  m.regime = Regime::L;
  m.delta = delta;
  m.z = merit_components(coeffs, temperature, Regime::L);
  const double d2 = delta * delta;
  m.r = d2 * m.z.c;
  m.y = d2 * b.y;
  if (m.y == 0.0) {
    throw Error(ErrorKind::AsymmetryUndefined, "generalized figure of merit y vanishes");
  }
  m.x = b.x;
  m.d = d2;
  m.time_symmetric_figure = d2 * b.zt;
  m.buttiker = b;
  return m;
}

}  // namespace thermoprobe
