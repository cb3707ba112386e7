#include "thermoprobe/harness/inspect.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "thermoprobe/coefficients.hpp"
#include "thermoprobe/dot_ring.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/harness/figures.hpp"
#include "thermoprobe/performance.hpp"
#include "thermoprobe/transport_kernel.hpp"

namespace thermoprobe::harness {
namespace {

struct Matrices {
  OnsagerMatrix full;
  VoltageProbeReduction vp;
  ButtikerReduction bt;
};

Matrices build(const SweepConfig& cfg, double phi, FieldSign field) {
  DotRingModel model = cfg.model;
  model.phi = phi;
  model.field = field;
  OnsagerMatrix full = assemble_onsager4(dot_ring_transmission_set(model), cfg.temperature,
                                         cfg.mu, cfg.quadrature);
  VoltageProbeReduction vp = reduce_voltage_probe(full);
  ButtikerReduction bt = reduce_buttiker(vp.reduced);
  return {std::move(full), std::move(vp), std::move(bt)};
}

void dump_matrix(Dataset& d, const char* name, const OnsagerMatrix& m) {
  const auto fluxes = m.flux_labels();
  const auto forces = m.force_labels();
  for (int i = 1; i <= m.size(); ++i) {
    for (int j = 1; j <= m.size(); ++j) {
      d.add_row({std::string(name), std::string(to_string(m.field())),
                 static_cast<double>(i), static_cast<double>(j), fluxes[i - 1], forces[j - 1],
                 m.entry(i, j)});
    }
  }
}

double max_rel_diff(const OnsagerVector& a, const OnsagerVector& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  return scale > 0.0 ? (a - b).cwiseAbs().maxCoeff() / scale : 0.0;
}

}  // namespace

Dataset onsager_dump(const SweepConfig& config, const ParameterPoint& point) {
  config.validate();
  Dataset d;
  d.id = "ONSAGER";
  stamp_metadata(d, config);
  d.metadata.emplace_back("phi", format_number(point.phi));
  d.columns = {{"matrix", "", ColumnType::Text}, {"field", "", ColumnType::Text},
               {"row", "1"},
               {"col", "1"},
               {"flux", "", ColumnType::Text},
               {"force", "", ColumnType::Text},
               {"value", "1"}};
  for (FieldSign f : {FieldSign::Plus, FieldSign::Minus}) {
    const Matrices m = build(config, point.phi, f);
    dump_matrix(d, "L4", m.full);
    dump_matrix(d, "L3", m.vp.reduced);
    dump_matrix(d, "L2", m.bt.reduced);
  }
  return d;
}

std::vector<CheckResult> run_checks(const SweepConfig& config, const ParameterPoint& point) {
  config.validate();
  std::vector<CheckResult> out;
  const double tol = config.tolerance;
  const double t = config.temperature;

  auto run = [&](const std::string& name, const std::function<CheckResult()>& body) {
    try {
      CheckResult r = body();
      r.name = name;
      out.push_back(std::move(r));
    } catch (const Error& e) {
      out.push_back({name, false, 0.0, std::string(to_string(e.kind())) + ": " + e.what()});
    }
  };

  DotRingModel model = config.model;
  model.phi = point.phi;
  std::optional<Matrices> plus, minus;
  run("assembly", [&] {
    plus = build(config, point.phi, FieldSign::Plus);
    minus = build(config, point.phi, FieldSign::Minus);
    return CheckResult{"", true, 0.0, "L4, L3, L2 at +B and -B"};
  });
  if (!plus || !minus) return out;

  run("transmission_invariants", [&] {
    std::vector<double> energies;
    for (int i = 0; i <= 400; ++i) energies.push_back(config.mu - 10.0 + 0.05 * i);
    const auto rep = dot_ring_transmission_set(model).check_invariants(energies);
    const double worst = std::max(rep.sum_rule_violation, rep.reciprocity_violation);
    return CheckResult{"", rep.ok(tol), worst, "sum rule and reciprocity on 401 energies"};
  });

  run("onsager_casimir", [&] {
    const double diff =
        (plus->full.entries() - minus->full.entries().transpose()).cwiseAbs().maxCoeff();
    return CheckResult{"", diff <= tol, diff, "max |L_ij(+B) - L_ji(-B)|"};
  });

  run("second_law", [&] {
    const double scale = plus->full.max_abs_entry();
    const double ev = plus->full.min_symmetric_eigenvalue();
    const bool ok = ev >= -tol * scale && plus->full.has_nonnegative_diagonal();
    return CheckResult{"", ok, ev, "min eigenvalue of the symmetric part of L4"};
  });

  run("reduction_consistency", [&] {
    std::mt19937_64 rng(20240521);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double xv = u(rng), xt = u(rng), xpt = u(rng);
      OnsagerVector f4(4);
      f4 << xv, xt, plus->vp.probe_voltage_for(xv, xt, xpt), xpt;
      const OnsagerVector j4 = plus->full.fluxes(f4);
      OnsagerVector f3(3);
      f3 << xv, xt, xpt;
      const OnsagerVector j3 = plus->vp.reduced.fluxes(f3);
      OnsagerVector a(4), b(4);
      a << j4(0), j4(1), j4(3), j4(2);
      b << j3(0), j3(1), j3(2), 0.0;
      worst = std::max(worst, max_rel_diff(a, b));

      OnsagerVector g3(3);
      g3 << xv, xt, plus->bt.probe_thermal_for(xv, xt);
      const OnsagerVector k3 = plus->vp.reduced.fluxes(g3);
      OnsagerVector g2(2);
      g2 << xv, xt;
      const OnsagerVector k2 = plus->bt.reduced.fluxes(g2);
      OnsagerVector c(3), e(3);
      c << k3(0), k3(1), k3(2);
      e << k2(0), k2(1), 0.0;
      worst = std::max(worst, max_rel_diff(c, e));
    }
    return CheckResult{"", worst <= 1e-12, worst, "50 seeded force vectors"};
  });

  run("peltier_seebeck", [&] {
    const TransportCoefficients c = transport_coefficients(plus->vp.reduced, t);
    const double r = c.peltier_residual();
    return CheckResult{"", r <= tol, r, "Pi = T S(-B) against flux ratios"};
  });

  run("seebeck_reversal", [&] {
    const TransportCoefficients c = transport_coefficients(plus->vp.reduced, t);
    const double r = seebeck_reversal_mismatch(c.seebeck, minus->vp.reduced, t);
    return CheckResult{"", r <= tol, r, "S(-B) from +B entries vs the reversed matrix"};
  });

  run("probe_bounds", [&] {
    const BoundReport b = check_bounds(plus->vp.reduced, 1.0 / point.delta);
    const double worst = std::min({b.residuals[0], b.residuals[1], b.residuals[2]});
    return CheckResult{"", b.all_pass(), worst, "effective two-force matrix at xi = 1/delta"};
  });

  run("buttiker_bounds", [&] {
    const BoundReport b = check_buttiker_bounds(plus->bt.reduced);
    const double worst = std::min({b.residuals[0], b.residuals[1], b.residuals[2]});
    return CheckResult{"", b.all_pass(), worst, "two-terminal matrix"};
  });

  run("max_power_stationarity", [&] {
    const double xt = point.delta_t_left / t;
    const double xpt = xt / point.delta;
    const MaxPowerPoint mp = max_power(plus->vp.reduced, t, xt, xpt);
    const double h = 1e-4 * std::abs(mp.voltage_star);
    const double dp = (output_power(plus->vp.reduced, t, mp.voltage_star + h, xt, xpt) -
                       output_power(plus->vp.reduced, t, mp.voltage_star - h, xt, xpt)) /
                      (2.0 * h);
    const double rel = std::abs(dp * mp.voltage_star / mp.p_max);
    return CheckResult{"", rel <= 1e-6, rel, "centered difference of P at X_L^V*"};
  });

  run("figure_bound", [&] {
    OperatingConditions cond{t, config.mu, point.delta_t_left / t, point.delta_t_left / t / point.delta};
    const PerformancePoint p = evaluate_operating_point(plus->vp, cond, 1.0);
    if (p.regime == Regime::Refrigerator) {
      return CheckResult{"", true, 0.0, "not an engine at this point; skipped"};
    }
    const TransportCoefficients c = transport_coefficients(plus->vp.reduced, t);
    const MeritSet m = merit_set(c, point.delta, t, p.regime);
    if (std::abs(m.x - 1.0) <= tol) {
      return CheckResult{"", true, m.x, "x_m = 1 (H_m pole); orientation not tested"};
    }
    const bool ok = satisfies_figure_bound(m.y, m.x, m.d, tol);
    return CheckResult{"", ok, m.y - bound_functions(m.x, m.d).h_m,
                       std::string("regime ") + to_string(p.regime) + ", y_m - H_m"};
  });

  return out;
}

Dataset check_report(const SweepConfig& config, const ParameterPoint& point,
                     const std::vector<CheckResult>& results) {
  Dataset d;
  d.id = "CHECK";
  stamp_metadata(d, config);
  d.metadata.emplace_back("phi", format_number(point.phi));
  d.metadata.emplace_back("delta", format_number(point.delta));
  d.columns = {{"check", "", ColumnType::Text},
               {"status", "", ColumnType::Text},
               {"value", "1"},
               {"detail", "", ColumnType::Text}};
  for (const auto& r : results) {
    d.add_row({r.name, std::string(r.passed ? "PASS" : "FAIL"),
               std::isfinite(r.value) ? Cell{r.value} : Cell{}, r.detail});
  }
  return d;
}

}  // namespace thermoprobe::harness
