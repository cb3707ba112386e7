#include "thermoprobe/performance.hpp"

#include <cmath>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {
namespace {

void require_power_gain(double power_gain) {
  if (!(power_gain >= -1.0 && power_gain <= 0.0)) {
    throw Error(ErrorKind::Domain, "power gain must lie in [-1, 0]");
  }
}

double branch_sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }

double heat_denominator(const CurrentVector& c, Regime regime) {
  switch (regime) {
    case Regime::L: return c.heat_of(Terminal::L);
    case Regime::P: return c.heat_of(Terminal::P);
    case Regime::LP: return c.heat_of(Terminal::L) + c.heat_of(Terminal::P);
    case Regime::Refrigerator: break;
  }
  throw Error(ErrorKind::Domain, "no heat input in refrigerator regime");
}

}  // namespace

const char* to_string(Branch b) { return b == Branch::Plus ? "PLUS" : "MINUS"; }

Regime classify_regime(const CurrentVector& currents, double zero_band) {
  auto positive = [&](double j) { return j > zero_band; };
  const double jl = currents.heat_of(Terminal::L);
  const double jp = currents.heat_of(Terminal::P);
  const double jr = currents.heat_of(Terminal::R);
  for (double j : {jl, jp, jr}) {
    if (!std::isfinite(j)) throw Error(ErrorKind::Domain, "non-finite heat current");
  }
  if (positive(jr)) return Regime::Refrigerator;
  if (positive(jl) && positive(jp)) return Regime::LP;
  if (positive(jl)) return Regime::L;
  if (positive(jp)) return Regime::P;
  throw Error(ErrorKind::NoEngineRegime, "no reservoir supplies heat");
}

double carnot_efficiency(const CurrentVector& currents, double delta_t_left,
                         double delta_t_probe, double temperature, Regime regime) {
  const double denom = heat_denominator(currents, regime);
  if (denom == 0.0) {
    throw Error(ErrorKind::DegenerateCarnot, "heat-input denominator vanishes");
  }
  return (delta_t_probe * currents.heat_of(Terminal::P) +
          delta_t_left * currents.heat_of(Terminal::L)) /
         (temperature * denom);
}

double buttiker_carnot_efficiency(double delta_t_left, double temperature) {
  return delta_t_left / temperature;
}

double output_power(const OnsagerMatrix& voltage_probe, double temperature,
                    double voltage_left, double thermal_left, double thermal_probe) {
  const double jn = voltage_probe.entry(1, 1) * voltage_left +
                    voltage_probe.entry(1, 2) * thermal_left +
                    voltage_probe.entry(1, 3) * thermal_probe;
  return -temperature * jn * voltage_left;
}

MaxPowerPoint max_power(const OnsagerMatrix& voltage_probe, double temperature,
                        double thermal_left, double thermal_probe) {
  if (voltage_probe.rank() != OnsagerRank::VoltageProbe3) {
    throw ValidationError("onsager.rank", "max_power expects a VPROBE3 matrix");
  }
  const double l11 = voltage_probe.entry(1, 1);
  if (!(l11 > 0.0)) throw Error(ErrorKind::DegenerateConductor, "L'_11 must be positive");
  if (thermal_left == 0.0) throw Error(ErrorKind::ZeroDrive, "X_L^T must be nonzero");

  const double xi = thermal_probe / thermal_left;
  const double l12 = voltage_probe.entry(1, 2) + voltage_probe.entry(1, 3) * xi;
  MaxPowerPoint out;
  out.voltage_star = -l12 / (2.0 * l11) * thermal_left;

  const SeebeckSet s = seebeck(voltage_probe, temperature);
  const double g = l11 / temperature;
  const double s_eff = s.ll_plus + s.lp_plus * xi;
  const double t2 = temperature * temperature;
  out.p_max = 0.25 * t2 * t2 * g * s_eff * s_eff * thermal_left * thermal_left;
  return out;
}

CurrentVector voltage_probe_currents(const OnsagerMatrix& voltage_probe,
                                     double temperature, double mu,
                                     double voltage_left, double thermal_left,
                                     double thermal_probe) {
  OnsagerVector x(3);
  x << voltage_left, thermal_left, thermal_probe;
  const OnsagerVector j = voltage_probe.fluxes(x);
  const double power = -temperature * j(0) * voltage_left;

  CurrentVector c;
  c.particle = {j(0), 0.0, -j(0)};
  c.heat = {j(1), j(2), power - j(1) - j(2)};
  const double mu_left = mu + temperature * voltage_left;
  c.energy = {c.heat[0] + mu_left * c.particle[0], c.heat[1],
              c.heat[2] + mu * c.particle[2]};
  return c;
}

PerformancePoint evaluate_operating_point(const OnsagerMatrix& voltage_probe,
                                          const OperatingConditions& cond,
                                          double load) {
  const double t = cond.temperature;
  const MaxPowerPoint mp = max_power(voltage_probe, t, cond.thermal_left, cond.thermal_probe);

  PerformancePoint p;
  p.load = load;
  p.branch = load >= 1.0 ? Branch::Plus : Branch::Minus;
  p.forces.voltage_left = load * mp.voltage_star;
  p.forces.thermal_left = cond.thermal_left;
  p.forces.thermal_probe = cond.thermal_probe;
  p.currents = voltage_probe_currents(voltage_probe, t, cond.mu, p.forces.voltage_left,
                                      cond.thermal_left, cond.thermal_probe);
  p.power = output_power(voltage_probe, t, p.forces.voltage_left, cond.thermal_left,
                         cond.thermal_probe);
  p.p_max = mp.p_max;
  p.power_gain = mp.p_max != 0.0 ? (p.power - mp.p_max) / mp.p_max : 0.0;
  p.regime = classify_regime(p.currents);
  if (p.regime == Regime::Refrigerator) return p;

  const double dt_l = cond.thermal_left * t * t;
  const double dt_p = cond.thermal_probe * t * t;
  const double denom = heat_denominator(p.currents, p.regime);
  p.efficiency = p.power / denom;
  p.carnot = carnot_efficiency(p.currents, dt_l, dt_p, t, p.regime);

  const CurrentVector at_max = voltage_probe_currents(
      voltage_probe, t, cond.mu, mp.voltage_star, cond.thermal_left, cond.thermal_probe);
  const double denom_max = heat_denominator(at_max, p.regime);
  if (denom_max > 0.0) {
    p.efficiency_at_pmax = mp.p_max / denom_max;
    p.carnot_at_pmax = carnot_efficiency(at_max, dt_l, dt_p, t, p.regime);
  }
  return p;
}

PerformancePoint evaluate_operating_point(const VoltageProbeReduction& reduction,
                                          const OperatingConditions& conditions,
                                          double load) {
  PerformancePoint p = evaluate_operating_point(reduction.reduced, conditions, load);
  p.forces.voltage_probe = reduction.probe_voltage_for(
      p.forces.voltage_left, p.forces.thermal_left, p.forces.thermal_probe);
  p.currents.energy[index(Terminal::P)] +=
      (conditions.mu + conditions.temperature * p.forces.voltage_probe) *
      p.currents.particle[index(Terminal::P)];
  return p;
}

double efficiency_at_max_power(double x, double y, double d, double carnot_at_pmax) {
  const double denom = y + 2.0 * d;
  if (denom == 0.0) throw Error(ErrorKind::SingularMerit, "y_m + 2 d_m vanishes");
  return 0.5 * carnot_at_pmax * x * y / denom;
}

double efficiency_at_max_power(const MeritSet& merit, double carnot_at_pmax) {
  return efficiency_at_max_power(merit.x, merit.y, merit.d, carnot_at_pmax);
}

double buttiker_efficiency_at_max_power(double x, double y, double carnot) {
  const double denom = y + 2.0;
  if (denom == 0.0) throw Error(ErrorKind::SingularMerit, "y + 2 vanishes");
  return 0.5 * carnot * x * y / denom;
}

// The denominators below are written as (y + 2d) + y(1 − ε), algebraically
// 2(y + d) − yε, so ε = 1 reproduces the numerator factor bit for bit.

double normalized_efficiency(double load, double y, double d) {
  if (!(load > 0.0 && load < 2.0)) throw Error(ErrorKind::Domain, "load must lie in (0, 2)");
  const double base = y + 2.0 * d;
  const double denom = base + y * (1.0 - load);
  if (denom == 0.0) throw Error(ErrorKind::SingularLoad, "load hits a pole");
  return load * (2.0 - load) * base / denom;
}

double buttiker_normalized_efficiency(double load, double y) {
  if (!(load > 0.0 && load < 2.0)) throw Error(ErrorKind::Domain, "load must lie in (0, 2)");
  const double base = y + 2.0;
  const double denom = base + y * (1.0 - load);
  if (denom == 0.0) throw Error(ErrorKind::SingularLoad, "load hits a pole");
  return load * (2.0 - load) * base / denom;
}

double load_from_power_gain(double power_gain, Branch branch) {
  require_power_gain(power_gain);
  return 1.0 + branch_sign(branch) * std::sqrt(-power_gain);
}

double power_gain_from_load(double load) { return load * (2.0 - load) - 1.0; }

double normalized_efficiency_at_power_gain(double power_gain, Branch branch, double y,
                                           double d) {
  require_power_gain(power_gain);
  const double base = y + 2.0 * d;
  const double denom = base - branch_sign(branch) * std::sqrt(-power_gain) * y;
  if (denom == 0.0) throw Error(ErrorKind::SingularLoad, "power gain hits a pole");
  return (1.0 + power_gain) * base / denom;
}

double buttiker_normalized_efficiency_at_power_gain(double power_gain, Branch branch,
                                                    double y) {
  require_power_gain(power_gain);
  const double base = y + 2.0;
  const double denom = base - branch_sign(branch) * std::sqrt(-power_gain) * y;
  if (denom == 0.0) throw Error(ErrorKind::SingularLoad, "power gain hits a pole");
  return (1.0 + power_gain) * base / denom;
}

double efficiency_at_power_gain(double power_gain, Branch branch, double x, double y,
                                double d, double carnot) {
  require_power_gain(power_gain);
  const double denom = (y + 2.0 * d) - branch_sign(branch) * std::sqrt(-power_gain) * y;
  if (denom == 0.0) throw Error(ErrorKind::SingularLoad, "power gain hits a pole");
  return 0.5 * carnot * x * y * (1.0 + power_gain) / denom;
}

double efficiency_at_power_gain(double power_gain, Branch branch, const MeritSet& merit,
                                double carnot) {
  return efficiency_at_power_gain(power_gain, branch, merit.x, merit.y, merit.d, carnot);
}

double buttiker_efficiency_at_power_gain(double power_gain, Branch branch, double x,
                                         double y, double carnot) {
  require_power_gain(power_gain);
  const double denom = (y + 2.0) - branch_sign(branch) * std::sqrt(-power_gain) * y;
  if (denom == 0.0) throw Error(ErrorKind::SingularLoad, "power gain hits a pole");
  return 0.5 * carnot * x * y * (1.0 + power_gain) / denom;
}

BoundFunctions bound_functions(double x, double d) {
  if (x == 1.0) throw Error(ErrorKind::Pole, "bound functions diverge at x_m = 1");
  const double gap = (x - 1.0) * (x - 1.0);
  BoundFunctions b;
  b.h = x / gap;
  b.h_m = d * x / gap;
  b.lower = std::min(0.0, b.h_m);
  b.upper = std::max(0.0, b.h_m);
  return b;
}

bool satisfies_figure_bound(double y, double x, double d, double tolerance) {
  const BoundFunctions b = bound_functions(x, d);
  return y >= b.lower - tolerance && y <= b.upper + tolerance;
}

double efficiency_bound(double x, double power_gain, Branch branch, double carnot) {
  require_power_gain(power_gain);
  if (power_gain == -1.0) return 0.0;
  const double load = 1.0 + branch_sign(branch) * std::sqrt(-power_gain);
  const double denom = 2.0 * (x * x - x + 1.0) - load * x;
  if (denom == 0.0) throw Error(ErrorKind::SingularMerit, "efficiency bound denominator vanishes");
  return 0.5 * carnot * x * x * (1.0 + power_gain) / denom;
}

}  // namespace thermoprobe
