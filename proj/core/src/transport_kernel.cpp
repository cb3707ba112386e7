#include "thermoprobe/transport_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {
namespace {

constexpr double kSingularRatio = 1e-14;

void require_rank(const OnsagerMatrix& m, OnsagerRank rank) {
  if (m.rank() != rank) {
    throw ValidationError("onsager.rank", std::string("expected ") + to_string(rank) +
                                              ", got " + to_string(m.rank()));
  }
}

void require_pivot(double pivot, const OnsagerMatrix& m, const char* what) {
  const double scale = m.max_abs_entry();
  if (!std::isfinite(pivot) || scale == 0.0 || std::abs(pivot) <= kSingularRatio * scale) {
    throw Error(ErrorKind::SingularElimination,
                std::string(what) + " vanishes: probe decoupled from the device");
  }
}

}  // namespace

OnsagerMatrix assemble_onsager4(const TransmissionSet& transmission, double temperature,
                                double mu, const QuadratureOptions& options) {
  if (!(temperature > 0.0)) throw Error(ErrorKind::Domain, "temperature must be positive");

  using enum Terminal;
  // Components: moments n = 0, 1, 2 of T_LP, T_LR, T_PL, T_PR.
  auto integrand = [&](double e) {
    const TransmissionMatrix t = transmission.at(e);
    const double w = fermi_window(e, temperature, mu);
    const double de = e - mu;
    const std::array<double, 4> pairs = {t(L, P), t(L, R), t(P, L), t(P, R)};
    std::array<double, 12> out{};
    for (int k = 0; k < 4; ++k) {
      out[3 * k] = w * pairs[k];
      out[3 * k + 1] = w * de * pairs[k];
      out[3 * k + 2] = w * de * de * pairs[k];
    }
    return out;
  };
  const double half = options.window * temperature;
  const auto moments = integrate<12>(integrand, mu - half, mu + half, options.abs_tol,
                                     options.max_depth, options.initial_panels)
                           .value;
  auto lp = [&](int n) { return moments[n]; };
  auto lr = [&](int n) { return moments[3 + n]; };
  auto pl = [&](int n) { return moments[6 + n]; };
  auto pr = [&](int n) { return moments[9 + n]; };

  const double scale = temperature;  // T / h with h = 1
  OnsagerBlock m(4, 4);
  m(0, 0) = scale * (lp(0) + lr(0));
  m(0, 1) = scale * (lp(1) + lr(1));
  m(0, 2) = -scale * lp(0);
  m(0, 3) = -scale * lp(1);
  m(1, 0) = scale * (lp(1) + lr(1));
  m(1, 1) = scale * (lp(2) + lr(2));
  m(1, 2) = -scale * lp(1);
  m(1, 3) = -scale * lp(2);
  m(2, 0) = -scale * pl(0);
  m(2, 1) = -scale * pl(1);
  m(2, 2) = scale * (pl(0) + pr(0));
  m(2, 3) = scale * (pl(1) + pr(1));
  m(3, 0) = -scale * pl(1);
  m(3, 1) = -scale * pl(2);
  m(3, 2) = scale * (pl(1) + pr(1));
  m(3, 3) = scale * (pl(2) + pr(2));
  return OnsagerMatrix(OnsagerRank::Full4, transmission.field(), m);
}

CurrentVector landauer_currents(const TransmissionSet& transmission,
                                const ReservoirState& reservoirs,
                                const QuadratureOptions& options) {
  std::array<double, 3> temps{};
  std::array<double, 3> mus{};
  for (Terminal t : kTerminals) {
    temps[index(t)] = reservoirs.temperature_of(t);
    mus[index(t)] = reservoirs.mu_of(t);
    if (!(temps[index(t)] > 0.0) || !std::isfinite(mus[index(t)])) {
      throw Error(ErrorKind::Domain, std::string("invalid reservoir ") + to_string(t));
    }
  }
  const double t_max = *std::max_element(temps.begin(), temps.end());
  const double lo = *std::min_element(mus.begin(), mus.end()) - options.window * t_max;
  const double hi = *std::max_element(mus.begin(), mus.end()) + options.window * t_max;

  // Components per terminal α: J^N, J^Q, J^U spectral densities.
  auto integrand = [&](double e) {
    const TransmissionMatrix t = transmission.at(e);
    std::array<double, 3> occ{};
    for (int a = 0; a < 3; ++a) occ[a] = fermi(e, temps[a], mus[a]);
    std::array<double, 9> out{};
    for (int a = 0; a < 3; ++a) {
      double flow = 0.0;
      for (int b = 0; b < 3; ++b) {
        if (a != b) flow += t.values[a][b] * (occ[a] - occ[b]);
      }
      out[3 * a] = flow;
      out[3 * a + 1] = (e - mus[a]) * flow;
      out[3 * a + 2] = e * flow;
    }
    return out;
  };
  const auto v = integrate<9>(integrand, lo, hi, options.abs_tol, options.max_depth,
                              options.initial_panels)
                     .value;
  CurrentVector c;
  for (int a = 0; a < 3; ++a) {
    c.particle[a] = v[3 * a];
    c.heat[a] = v[3 * a + 1];
    c.energy[a] = v[3 * a + 2];
  }
  return c;
}

VoltageProbeReduction reduce_voltage_probe(const OnsagerMatrix& full) {
  require_rank(full, OnsagerRank::Full4);
  auto L = [&](int i, int j) { return full.entry(i, j); };
  const double l33 = L(3, 3);
  require_pivot(l33, full, "L_33");

  OnsagerBlock r(3, 3);
  r(0, 0) = (L(3, 3) * L(1, 1) - L(1, 3) * L(3, 1)) / l33;
  r(0, 1) = (L(3, 3) * L(1, 2) - L(1, 3) * L(3, 2)) / l33;
  r(0, 2) = (L(1, 4) * L(3, 3) - L(1, 3) * L(3, 4)) / l33;
  r(1, 0) = (L(2, 1) * L(3, 3) - L(2, 3) * L(3, 1)) / l33;
  r(1, 1) = (L(3, 3) * L(2, 2) - L(2, 3) * L(3, 2)) / l33;
  r(1, 2) = (L(2, 4) * L(3, 3) - L(2, 3) * L(3, 4)) / l33;
  r(2, 0) = (L(4, 1) * L(3, 3) - L(4, 3) * L(3, 1)) / l33;
  r(2, 1) = (L(4, 2) * L(3, 3) - L(4, 3) * L(3, 2)) / l33;
  r(2, 2) = (L(4, 4) * L(3, 3) - L(4, 3) * L(3, 4)) / l33;

  return {OnsagerMatrix(OnsagerRank::VoltageProbe3, full.field(), r),
          {-L(3, 1) / l33, -L(3, 2) / l33, -L(3, 4) / l33}};
}

ButtikerReduction reduce_buttiker(const OnsagerMatrix& voltage_probe) {
  require_rank(voltage_probe, OnsagerRank::VoltageProbe3);
  auto L = [&](int i, int j) { return voltage_probe.entry(i, j); };
  const double l33 = L(3, 3);
  require_pivot(l33, voltage_probe, "L'_33");

  OnsagerBlock r(2, 2);
  r(0, 0) = (L(1, 1) * L(3, 3) - L(1, 3) * L(3, 1)) / l33;
  r(0, 1) = (L(1, 2) * L(3, 3) - L(1, 3) * L(3, 2)) / l33;
  r(1, 0) = (L(2, 1) * L(3, 3) - L(2, 3) * L(3, 1)) / l33;
  r(1, 1) = (L(2, 2) * L(3, 3) - L(2, 3) * L(3, 2)) / l33;

  return {OnsagerMatrix(OnsagerRank::Buttiker2, voltage_probe.field(), r),
          {-L(3, 1) / l33, -L(3, 2) / l33}};
}

namespace {

BoundReport evaluate_bounds(double l11, double l12, double l21, double l22,
                            double tolerance) {
  BoundReport report{l11, l12, l21, l22, {}, {}};
  report.residuals = {l11, l22, l11 * l22 + l12 * l21 - (l12 * l12 - l21 * l21)};
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(report.residuals[i])) {
      throw Error(ErrorKind::Domain, "non-finite bound residual");
    }
    report.pass[i] = report.residuals[i] >= tolerance;
  }
  return report;
}

}  // namespace

BoundReport check_bounds(const OnsagerMatrix& voltage_probe, double xi, double tolerance) {
  require_rank(voltage_probe, OnsagerRank::VoltageProbe3);
  if (!std::isfinite(xi)) throw Error(ErrorKind::Domain, "xi must be finite");
  auto L = [&](int i, int j) { return voltage_probe.entry(i, j); };
  const double l11 = L(1, 1);
  const double l12 = L(1, 2) + L(1, 3) * xi;
  const double l21 = L(2, 1) + L(3, 1) * xi;
  const double l22 = L(2, 2) + L(3, 3) * xi * xi + (L(2, 3) + L(3, 2)) * xi;
  return evaluate_bounds(l11, l12, l21, l22, tolerance);
}

BoundReport check_buttiker_bounds(const OnsagerMatrix& buttiker, double tolerance) {
  require_rank(buttiker, OnsagerRank::Buttiker2);
  return evaluate_bounds(buttiker.entry(1, 1), buttiker.entry(1, 2),
                         buttiker.entry(2, 1), buttiker.entry(2, 2), tolerance);
}

}  // namespace thermoprobe
