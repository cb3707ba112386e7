#include "thermoprobe/transport_types.hpp"

#include <cmath>
#include <cstdio>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {

const char* to_string(Terminal t) {
  switch (t) {
    case Terminal::L: return "L";
    case Terminal::P: return "P";
    case Terminal::R: return "R";
  }
  return "?";
}

const char* to_string(FieldSign s) {
  return s == FieldSign::Plus ? "+B" : "-B";
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::QuadratureFailure: return "quadrature-failure";
    case ErrorKind::SingularElimination: return "singular-elimination";
    case ErrorKind::DegenerateConductor: return "degenerate-conductor";
    case ErrorKind::RegimeUndefined: return "regime-undefined";
    case ErrorKind::AsymmetryUndefined: return "asymmetry-undefined";
    case ErrorKind::NoEngineRegime: return "no-engine-regime";
    case ErrorKind::DegenerateCarnot: return "degenerate-carnot";
    case ErrorKind::ZeroDrive: return "zero-drive";
    case ErrorKind::SingularMerit: return "singular-merit";
    case ErrorKind::SingularLoad: return "singular-load";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::IllConditioned: return "ill-conditioned";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

double ReservoirState::temperature_of(Terminal t) const {
  switch (t) {
    case Terminal::L: return temperature + delta_t_left;
    case Terminal::P: return temperature + delta_t_probe;
    case Terminal::R: return temperature;
  }
  return temperature;
}

double ReservoirState::mu_of(Terminal t) const {
  switch (t) {
    case Terminal::L: return mu + delta_mu_left;
    case Terminal::P: return mu + delta_mu_probe;
    case Terminal::R: return mu;
  }
  return mu;
}

std::vector<std::string> ReservoirState::linear_response_warnings(
    double threshold) const {
  std::vector<std::string> out;
  auto check = [&](const char* name, double value) {
    const double ratio = std::abs(value) / temperature;
    if (ratio > threshold) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "|%s|/T = %.3g exceeds linear-response threshold %.3g",
                    name, ratio, threshold);
      out.emplace_back(buf);
    }
  };
  check("dT_L", delta_t_left);
  check("dmu_L", delta_mu_left);
  check("dT_P", delta_t_probe);
  check("dmu_P", delta_mu_probe);
  return out;
}

ForceVector ForceVector::from_reservoirs(const ReservoirState& r) {
  const double t = r.temperature;
  return {r.delta_mu_left / t, r.delta_t_left / (t * t), r.delta_mu_probe / t,
          r.delta_t_probe / (t * t)};
}

std::optional<double> ForceVector::xi() const {
  if (thermal_left == 0.0) return std::nullopt;
  return thermal_probe / thermal_left;
}

std::optional<double> ForceVector::delta() const {
  if (thermal_probe == 0.0) return std::nullopt;
  return thermal_left / thermal_probe;
}

}  // namespace thermoprobe
