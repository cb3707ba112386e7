#include "thermoprobe/harness/figures.hpp"

#include <cmath>
#include <cstdio>

#include "thermoprobe/coefficients.hpp"
#include "thermoprobe/dot_ring.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/harness/parallel.hpp"
#include "thermoprobe/performance.hpp"
#include "thermoprobe/transport_kernel.hpp"

namespace thermoprobe::harness {
namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string lower(const char* s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Dataset make_dataset(FigureId id, const SweepConfig& config, std::vector<Column> columns) {
  Dataset d;
  d.id = to_string(id);
  stamp_metadata(d, config);
  d.columns = std::move(columns);
  return d;
}

// Rows for one curve. An exact zero or a sign change of the denominator
// between neighbouring grid points becomes a gap marker instead of a spike.
template <class Denominator, class Row>
void emit_curve(Dataset& d, const std::string& series, const char* axis,
                const std::vector<double>& grid, Denominator denominator, Row row) {
  bool have_last = false, in_gap = false;
  double last = 0.0, last_den = 0.0, gap_from = 0.0;
  for (double v : grid) {
    const double den = denominator(v);
    if (den == 0.0) {
      if (!in_gap) gap_from = have_last ? last : v;
      in_gap = true;
      continue;
    }
    if (in_gap) {
      d.gaps.push_back({series, axis, gap_from, v});
      in_gap = false;
    } else if (have_last && (den > 0.0) != (last_den > 0.0)) {
      d.gaps.push_back({series, axis, last, v});
    }
    d.add_row(row(v));
    have_last = true;
    last = v;
    last_den = den;
  }
  if (in_gap) d.gaps.push_back({series, axis, gap_from, grid.back()});
}

double branch_sign(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }

// x where η_bound/η_c crosses the CA level between two grid nodes.
double bisect_ca(double lo, double hi, double power_gain, Branch branch) {
  auto f = [&](double x) { return efficiency_bound(x, power_gain, branch, 1.0) - 0.5; };
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig2: return "FIG2";
    case FigureId::Fig3: return "FIG3";
    case FigureId::Fig4: return "FIG4";
    case FigureId::Fig5: return "FIG5";
    case FigureId::Fig6: return "FIG6";
  }
  return "?";
}

FigureId parse_figure(const std::string& text) {
  for (FigureId id : {FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5,
                      FigureId::Fig6}) {
    if (text == to_string(id) || text == lower(to_string(id))) return id;
  }
  throw ValidationError("figure", "expected one of fig2..fig6, got '" + text + "'");
}

void stamp_metadata(Dataset& d, const SweepConfig& config) {
  nlohmann::ordered_json params = config.to_json();
  params.erase("output");
  params.erase("workers");
  params.erase("timestamp");
  d.metadata = {
      {"generator", std::string("thermoprobe ") + kVersion},
      {"provenance", std::string("thermoprobe-") + kVersion + "+cfg." + config_fingerprint(config)},
      {"timestamp", config.timestamp},
      {"tolerances", "quadrature_abs_tol=" + format_number(config.quadrature.abs_tol) +
                         " check_tol=" + format_number(config.tolerance)},
      {"parameters", params.dump()},
  };
}

Dataset figure_bound_functions(const SweepConfig& config) {
  Dataset d = make_dataset(FigureId::Fig2, config,
                           {{"series", "", ColumnType::Text},
                            {"x_m", "1"},
                            {"d_m", "1"},
                            {"H", "1"}});
  const auto xs = config.x.values();
  auto denom = [](double x) { return x - 1.0; };
  for (double dm : config.fig2_d_values) {
    const std::string series = "H_m d=" + fmt_g(dm);
    emit_curve(d, series, "x_m", xs, denom, [&](double x) {
      return std::vector<Cell>{series, x, dm, bound_functions(x, dm).h_m};
    });
  }
  emit_curve(d, "H", "x_m", xs, denom, [&](double x) {
    return std::vector<Cell>{std::string("H"), x, std::monostate{}, bound_functions(x, 1.0).h};
  });
  return d;
}

Dataset figure_efficiency_vs_load(const SweepConfig& config) {
  Dataset d = make_dataset(FigureId::Fig3, config,
                           {{"series", "", ColumnType::Text},
                            {"epsilon", "1"},
                            {"d_m", "1"},
                            {"y_m", "1"},
                            {"eta_ratio", "eta_m(P_max)"}});
  const auto eps = config.epsilon.values();
  for (double dm : config.d_values) {
    for (double y : config.y_values) {
      const std::string series = "vprobe d=" + fmt_g(dm) + " y=" + fmt_g(y);
      emit_curve(
          d, series, "epsilon", eps,
          [&](double e) { return (y + 2.0 * dm) + y * (1.0 - e); },
          [&](double e) {
            return std::vector<Cell>{series, e, dm, y, normalized_efficiency(e, y, dm)};
          });
    }
  }
  for (double y : config.y_values) {
    const std::string series = "buttiker y=" + fmt_g(y);
    emit_curve(
        d, series, "epsilon", eps, [&](double e) { return (y + 2.0) + y * (1.0 - e); },
        [&](double e) {
          return std::vector<Cell>{series, e, 1.0, y, buttiker_normalized_efficiency(e, y)};
        });
  }
  for (double e : eps) {
    d.add_row({std::string("power_ratio"), e, std::monostate{}, std::monostate{},
               e * (2.0 - e)});
  }
  return d;
}

Dataset figure_efficiency_vs_power_gain(const SweepConfig& config) {
  Dataset d = make_dataset(FigureId::Fig4, config,
                           {{"series", "", ColumnType::Text},
                            {"branch", "", ColumnType::Text},
                            {"power_gain", "1"},
                            {"d_m", "1"},
                            {"y_m", "1"},
                            {"eta_ratio", "eta_m(P_max)"}});
  const auto gains = config.power_gain.values();
  const Branch b = config.branch;
  const std::string bname = to_string(b);
  const double sgn = branch_sign(b);
  for (double dm : config.d_values) {
    for (double y : config.y_values) {
      const std::string series = "vprobe d=" + fmt_g(dm) + " y=" + fmt_g(y);
      emit_curve(
          d, series, "power_gain", gains,
          [&](double g) { return (y + 2.0 * dm) - sgn * std::sqrt(-g) * y; },
          [&](double g) {
            return std::vector<Cell>{series, bname, g, dm, y,
                                     normalized_efficiency_at_power_gain(g, b, y, dm)};
          });
    }
  }
  for (double y : config.y_values) {
    const std::string series = "buttiker y=" + fmt_g(y);
    emit_curve(
        d, series, "power_gain", gains,
        [&](double g) { return (y + 2.0) - sgn * std::sqrt(-g) * y; },
        [&](double g) {
          return std::vector<Cell>{series, bname, g, 1.0, y,
                                   buttiker_normalized_efficiency_at_power_gain(g, b, y)};
        });
  }
  for (double g : gains) {
    d.add_row({std::string("power_ratio"), bname, g, std::monostate{}, std::monostate{}, 1.0 + g});
  }
  return d;
}

Dataset figure_efficiency_bound(const SweepConfig& config) {
  Dataset d = make_dataset(FigureId::Fig5, config,
                           {{"series", "", ColumnType::Text},
                            {"branch", "", ColumnType::Text},
                            {"x_m", "1"},
                            {"power_gain", "1"},
                            {"eta_bound", "eta_c,m"}});
  const auto xs = config.x.values();
  const auto gains = config.power_gain.values();
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const std::string bname = to_string(b);
    const std::string series = "bound " + bname;
    for (double g : gains) {
      for (double x : xs) d.add_row({series, bname, x, g, efficiency_bound(x, g, b, 1.0)});
    }
  }
  // CA-level marks: crossings of η_bound = η_c,m/2 along x at fixed ΔP.
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const std::string bname = to_string(b);
    const std::string series = "ca_contour " + bname;
    for (double g : gains) {
      double prev = efficiency_bound(xs[0], g, b, 1.0) - 0.5;
      if (prev == 0.0) d.add_row({series, bname, xs[0], g, 0.5});
      for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = efficiency_bound(xs[i], g, b, 1.0) - 0.5;
        if (cur == 0.0) {
          d.add_row({series, bname, xs[i], g, 0.5});
        } else if (prev != 0.0 && (cur > 0.0) != (prev > 0.0)) {
          d.add_row({series, bname, bisect_ca(xs[i - 1], xs[i], g, b), g, 0.5});
        }
        prev = cur;
      }
    }
  }
  return d;
}

Dataset figure_characteristic_parameters(const SweepConfig& config) {
  Dataset d = make_dataset(FigureId::Fig6, config,
                           {{"series", "", ColumnType::Text},
                            {"phi", "rad"},
                            {"delta", "1"},
                            {"d_L", "1"},
                            {"d_P", "1"},
                            {"d_LP", "1"}});
  const auto phis = config.phi_points();
  const auto deltas = config.delta.values();
  std::vector<ConductanceSet> ks(phis.size());
  parallel_for(phis.size(), config.workers, [&](std::size_t i) {
    DotRingModel model = config.model;
    model.phi = phis[i];
    model.field = FieldSign::Plus;
    const OnsagerMatrix l4 = assemble_onsager4(dot_ring_transmission_set(model),
                                               config.temperature, config.mu, config.quadrature);
    ks[i] = conductances(reduce_voltage_probe(l4).reduced, config.temperature);
  });
  for (std::size_t i = 0; i < phis.size(); ++i) {
    for (double delta : deltas) {
      d.add_row({std::string("d_m"), phis[i], delta,
                 characteristic_parameter(ks[i], delta, Regime::L),
                 characteristic_parameter(ks[i], delta, Regime::P),
                 characteristic_parameter(ks[i], delta, Regime::LP)});
    }
  }
  return d;
}

Dataset run_figure(FigureId id, const SweepConfig& config) {
  config.validate();
  switch (id) {
    case FigureId::Fig2: return figure_bound_functions(config);
    case FigureId::Fig3: return figure_efficiency_vs_load(config);
    case FigureId::Fig4: return figure_efficiency_vs_power_gain(config);
    case FigureId::Fig5: return figure_efficiency_bound(config);
    case FigureId::Fig6: return figure_characteristic_parameters(config);
  }
  throw ValidationError("figure", "unknown figure");
}

}  // namespace thermoprobe::harness
