#include "thermoprobe/harness/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "thermoprobe/coefficients.hpp"
#include "thermoprobe/dot_ring.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/harness/figures.hpp"
#include "thermoprobe/harness/parallel.hpp"
#include "thermoprobe/performance.hpp"
#include "thermoprobe/transport_kernel.hpp"

namespace thermoprobe::harness {
namespace {

const std::vector<Column>& sweep_columns() {
  static const std::vector<Column> cols = {
      {"phi", "rad"},
      {"delta", "1"},
      {"delta_t_left", "T"},
      {"regime", "", ColumnType::Text},
      {"x_m", "1"},
      {"y_m", "1"},
      {"d_m", "1"},
      {"H_m", "1"},
      {"eta_pmax", "1"},
      {"eta_pmax_formula", "1"},
      {"eta_c_pmax", "1"},
      {"p_max", "1"},
      {"bound_l11", "1"},
      {"bound_l22", "1"},
      {"bound_det", "1"},
      {"bounds_ok", "1"},
      {"figure_bound_ok", "1"},
      {"pole", "1"},
      {"probe_hotter", "1"},
      {"error", "", ColumnType::Text},
  };
  return cols;
}

enum Col : std::size_t {
  kPhi, kDelta, kDeltaT, kRegime, kX, kY, kD, kHm, kEta, kEtaFormula, kEtaC, kPmax,
  kB11, kB22, kBdet, kBoundsOk, kFigOk, kPole, kHotter, kError, kCount
};

struct PointInput {
  double phi;
  double delta;
  double delta_t_left;
};

// Fills everything downstream of the reduced matrix; throws on numerical failure.
void fill_point(std::vector<Cell>& row, const VoltageProbeReduction& vp,
                const SweepConfig& cfg, const PointInput& in) {
  const double t = cfg.temperature;
  OperatingConditions cond;
  cond.temperature = t;
  cond.mu = cfg.mu;
  cond.thermal_left = in.delta_t_left / (t * t);
  cond.thermal_probe = cond.thermal_left / in.delta;
  row[kHotter] = std::abs(in.delta_t_left / in.delta) > std::abs(in.delta_t_left) ? 1.0 : 0.0;

  const BoundReport bounds = check_bounds(vp.reduced, 1.0 / in.delta);
  row[kB11] = bounds.residuals[0];
  row[kB22] = bounds.residuals[1];
  row[kBdet] = bounds.residuals[2];
  row[kBoundsOk] = bounds.all_pass() ? 1.0 : 0.0;

  const PerformancePoint p = evaluate_operating_point(vp, cond, 1.0);
  row[kRegime] = std::string(to_string(p.regime));
  row[kPmax] = p.p_max;
  if (p.regime == Regime::Refrigerator) return;

  const TransportCoefficients coeffs = transport_coefficients(vp.reduced, t);
  const MeritSet m = merit_set(coeffs, in.delta, t, p.regime);
  row[kX] = m.x;
  row[kY] = m.y;
  row[kD] = m.d;
  if (p.efficiency_at_pmax) row[kEta] = *p.efficiency_at_pmax;
  if (p.carnot_at_pmax) {
    row[kEtaC] = *p.carnot_at_pmax;
    row[kEtaFormula] = efficiency_at_max_power(m, *p.carnot_at_pmax);
  }
  if (std::abs(m.x - 1.0) <= cfg.tolerance) {
    // H_m -> sign(d_m)·inf here, so only the side of y_m is left to check
    row[kPole] = 1.0;
    row[kFigOk] = m.y * m.d >= -cfg.tolerance ? 1.0 : 0.0;
    return;
  }
  row[kPole] = 0.0;
  row[kHm] = bound_functions(m.x, m.d).h_m;
  row[kFigOk] = satisfies_figure_bound(m.y, m.x, m.d, cfg.tolerance) ? 1.0 : 0.0;
}

bool keep(const std::vector<Cell>& row, const std::vector<Regime>& filter) {
  const auto* regime = std::get_if<std::string>(&row[kRegime]);
  if (regime == nullptr) return true;  // failed before classification
  return std::any_of(filter.begin(), filter.end(),
                     [&](Regime r) { return *regime == to_string(r); });
}

}  // namespace

Dataset run_sweep(const SweepConfig& config) {
  config.validate();
  Dataset d;
  d.id = "SWEEP";
  stamp_metadata(d, config);
  d.columns = sweep_columns();

  const auto phis = config.phi_points();
  const auto deltas = config.delta.values();
  const auto& scales = config.delta_t_left;
  const std::size_t per_phi = deltas.size() * scales.size();
  std::vector<std::vector<Cell>> rows(phis.size() * per_phi);

  parallel_for(phis.size(), config.workers, [&](std::size_t i) {
    std::optional<VoltageProbeReduction> vp;
    std::string assembly_error;
    try {
      DotRingModel model = config.model;
      model.phi = phis[i];
      model.field = FieldSign::Plus;
      vp = reduce_voltage_probe(assemble_onsager4(dot_ring_transmission_set(model),
                                                  config.temperature, config.mu,
                                                  config.quadrature));
    } catch (const Error& e) {
      assembly_error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    std::size_t k = i * per_phi;
    for (double delta : deltas) {
      for (double scale : scales) {
        auto& row = rows[k++];
        row.assign(kCount, std::monostate{});
        row[kPhi] = phis[i];
        row[kDelta] = delta;
        row[kDeltaT] = scale * config.temperature;
        if (!vp) {
          row[kError] = assembly_error;
          continue;
        }
        try {
          fill_point(row, *vp, config, {phis[i], delta, scale * config.temperature});
        } catch (const Error& e) {
          row[kError] = std::string(to_string(e.kind())) + ": " + e.what();
        }
      }
    }
  });

  for (auto& row : rows) {
    if (keep(row, config.regime_filter)) d.add_row(std::move(row));
  }
  return d;
}

}  // namespace thermoprobe::harness
