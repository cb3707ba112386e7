// Acceptance run: one PASS/FAIL line per criterion. `--criterion N` runs one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "thermoprobe/coefficients.hpp"
#include "thermoprobe/dot_ring.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/harness/config.hpp"
#include "thermoprobe/harness/dataset.hpp"
#include "thermoprobe/harness/figures.hpp"
#include "thermoprobe/harness/sweep.hpp"
#include "thermoprobe/performance.hpp"
#include "thermoprobe/quadrature.hpp"
#include "thermoprobe/transport_kernel.hpp"

using namespace thermoprobe;
namespace th = thermoprobe::harness;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no runtime clause
  std::function<Outcome()> run;
};

int bench_workers() {
  return static_cast<int>(std::max(4u, std::thread::hardware_concurrency()));
}

struct Pipeline {
  OnsagerMatrix full;
  VoltageProbeReduction vp;
  ButtikerReduction bt;
};

Pipeline pipeline(double phi, FieldSign f = FieldSign::Plus) {
  DotRingModel m = canonical_dot_ring(phi);
  m.field = f;
  OnsagerMatrix full = assemble_onsager4(dot_ring_transmission_set(m), 1.0, 0.0);
  VoltageProbeReduction vp = reduce_voltage_probe(full);
  ButtikerReduction bt = reduce_buttiker(vp.reduced);
  return {std::move(full), std::move(vp), std::move(bt)};
}

Outcome fermi_moments() {
  Outcome o;
  const auto one = [](double) { return 1.0; };
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double e0 = 0.0, e1 = 0.0, e2 = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0})
    for (double mu : {0.0, 0.7}) {
      e0 = std::max(e0, std::abs(fermi_derivative_moment(0, t, mu, one) - 1.0));
      e1 = std::max(e1, std::abs(fermi_derivative_moment(1, t, mu, one)));
      e2 = std::max(e2, std::abs(fermi_derivative_moment(2, t, mu, one) - pi2 * t * t / 3.0));
    }
  o.require(e0 <= 1e-9 && e1 <= 1e-9 && e2 <= 1e-9,
            "T in {0.1..2}, errors (n=0,1,2) = " + fmt("%.2e", e0) + ", " + fmt("%.2e", e1) +
                ", " + fmt("%.2e", e2));
  return o;
}

Outcome onsager_casimir() {
  Outcome o;
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double phi = u(rng);
    const Pipeline p = pipeline(phi), m = pipeline(phi, FieldSign::Minus);
    worst = std::max(worst, (p.full.entries() - m.full.entries().transpose()).cwiseAbs().maxCoeff());
  }
  o.require(worst <= 1e-9, "20 random phi, max |L_ij(+) - L_ji(-)| = " + fmt("%.2e", worst));
  return o;
}

Outcome reduction_consistency() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0), phi(0.0, kTwoPi);
  const Pipeline p = pipeline(phi(rng));
  double w3 = 0.0, w2 = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double xv = u(rng), xt = u(rng), xpt = u(rng);
    OnsagerVector f4(4), f3(3), g3(3), g2(2);
    f4 << xv, xt, p.vp.probe_voltage_for(xv, xt, xpt), xpt;
    f3 << xv, xt, xpt;
    const OnsagerVector j4 = p.full.fluxes(f4), j3 = p.vp.reduced.fluxes(f3);
    w3 = std::max({w3, std::abs(j4(0) - j3(0)), std::abs(j4(1) - j3(1)),
                   std::abs(j4(3) - j3(2)), std::abs(j4(2))});
    g3 << xv, xt, p.bt.probe_thermal_for(xv, xt);
    g2 << xv, xt;
    const OnsagerVector k3 = p.vp.reduced.fluxes(g3), k2 = p.bt.reduced.fluxes(g2);
    w2 = std::max({w2, std::abs(k3(0) - k2(0)), std::abs(k3(1) - k2(1)), std::abs(k3(2))});
  }
  o.require(w3 <= 1e-12, "L4 vs L3 max diff " + fmt("%.2e", w3));
  o.require(w2 <= 1e-12, "L3 vs L2 max diff " + fmt("%.2e", w2));
  return o;
}

Outcome buttiker_coincidence() {
  Outcome o;
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double eps = 1.98 * i / 101.0;
    for (double y : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0})
      worst = std::max(worst, std::abs(normalized_efficiency(eps, y, 1.0) -
                                       buttiker_normalized_efficiency(eps, y)));
  }
  o.require(worst <= 1e-12, "100x6 grid, max diff " + fmt("%.2e", worst));
  return o;
}

Outcome fixed_point() {
  Outcome o;
  bool exact = true;
  for (double y : {-50.0, -2.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0})
    for (double d : {-5.0, -1.0, -0.1, 0.1, 0.5, 1.0, 3.0, 5.0})
      if (y + 2.0 * d != 0.0) exact = exact && normalized_efficiency(1.0, y, d) == 1.0;
  o.require(exact, "eta/eta(Pmax) at eps=1 is exactly 1");
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double g = -i / 10000.0;
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      const double e = load_from_power_gain(g, b);
      worst = std::max(worst, std::abs(e * (2.0 - e) - (1.0 + g)));
    }
  }
  o.require(worst <= 1e-12, "eps(2-eps) = 1+dP, max diff " + fmt("%.2e", worst));
  return o;
}

Outcome curzon_ahlborn() {
  Outcome o;
  const double etac = 1.0;
  bool ca = true;
  for (Branch b : {Branch::Plus, Branch::Minus})
    ca = ca && efficiency_bound(1.0, 0.0, b, etac) == etac / 2.0;
  o.require(ca, "eta_bound(1, 0) = eta_c/2 exactly");

  double asym = 0.0;
  for (double g : {0.0, -0.25, -0.5, -0.75, -0.99})
    for (Branch b : {Branch::Plus, Branch::Minus})
      for (double x : {1e6, -1e6})
        asym = std::max(asym, std::abs(efficiency_bound(x, g, b, etac) / (0.25 * etac * (1.0 + g)) - 1.0));
  o.require(asym <= 1e-5, "|x|=1e6 asymptote rel err " + fmt("%.2e", asym));

  const double h = 1e-6;
  for (double x0 : {0.0, 1.0, -1.0}) {
    double worst = 0.0;
    for (double g : {0.0, -0.25, -0.5})
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        const double d = (efficiency_bound(x0 + h, g, b, etac) -
                          efficiency_bound(x0 - h, g, b, etac)) / (2.0 * h);
        worst = std::max(worst, std::abs(d));
      }
    o.require(worst < 1e-4 * etac,
              "stationary at x=" + fmt("%g", x0) + ": max |d eta/dx| = " + fmt("%.3e", worst));
  }
  return o;
}

Outcome bound_inequalities() {
  Outcome o;
  th::SweepConfig c;
  c.workers = bench_workers();
  const th::Dataset d = th::run_sweep(c);
  std::size_t engine = 0, eq9_bad = 0, fig_bad = 0, poles = 0, errors = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    if (d.has_value(r, "error")) {
      ++errors;
      continue;
    }
    if (d.text(r, "regime") == "REFRIGERATOR") continue;
    ++engine;
    const double res = std::min({d.number(r, "bound_l11"), d.number(r, "bound_l22"),
                                 d.number(r, "bound_det")});
    worst = std::min(worst, res);
    if (res < -1e-9) ++eq9_bad;
    if (d.number(r, "pole") == 1.0) {
      // At x_m = 1 the bound H_m runs off to sign(d_m)·∞; only the side is testable.
      ++poles;
      if (d.number(r, "y_m") * d.number(r, "d_m") < -1e-9) ++fig_bad;
    } else if (d.number(r, "figure_bound_ok") != 1.0) {
      ++fig_bad;
    }
  }
  o.require(errors == 0, std::to_string(errors) + " failed points");
  o.require(eq9_bad == 0, std::to_string(engine) + " engine points, min residual " +
                              fmt("%.3e", worst));
  o.require(fig_bad == 0, "y_m vs H_m orientation violations: " + std::to_string(fig_bad) +
                              " (" + std::to_string(poles) + " at the x_m = 1 pole)");
  return o;
}

Outcome sign_structure() {
  Outcome o;
  th::SweepConfig c;
  c.workers = bench_workers();
  const th::Dataset d = th::run_figure(th::FigureId::Fig6, c);
  std::size_t bad = 0;
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    const double l = d.number(r, "d_L"), p = d.number(r, "d_P"), lp = d.number(r, "d_LP");
    if (!(std::isfinite(l) && std::isfinite(p) && std::isfinite(lp) && l > 0 && p > 0 && lp < 0))
      ++bad;
  }
  o.require(d.rows.size() == 6400, std::to_string(d.rows.size()) + " grid points");
  o.require(bad == 0, std::to_string(bad) + " points off the (+, +, -) pattern");
  const std::string csv = th::to_csv(d);
  o.require(th::from_csv(csv).rows.size() == d.rows.size(), "dataset emitted and re-read");
  return o;
}

Outcome max_power_stationarity() {
  Outcome o;
  double grad = 0.0, para = 0.0;
  for (double phi : {std::numbers::pi / 3, 1.0, 2.5, 4.0})
    for (double xi : {0.5, -0.3, 2.0}) {
      const Pipeline p = pipeline(phi);
      const double xt = 0.01, xpt = xi * xt;
      const MaxPowerPoint mp = max_power(p.vp.reduced, 1.0, xt, xpt);
      const double h = 1e-3 * std::abs(mp.voltage_star);
      const double dp = (output_power(p.vp.reduced, 1.0, mp.voltage_star + h, xt, xpt) -
                         output_power(p.vp.reduced, 1.0, mp.voltage_star - h, xt, xpt)) / (2.0 * h);
      grad = std::max(grad, std::abs(dp) * std::abs(mp.voltage_star) / mp.p_max);
      for (int i = 0; i <= 200; ++i) {
        const double eps = i / 100.0;
        const double ratio = output_power(p.vp.reduced, 1.0, eps * mp.voltage_star, xt, xpt) / mp.p_max;
        para = std::max(para, std::abs(ratio - eps * (2.0 - eps)));
      }
    }
  o.require(grad < 1e-6, "relative gradient at X* " + fmt("%.2e", grad));
  o.require(para <= 1e-12, "P/Pmax vs eps(2-eps) max diff " + fmt("%.2e", para));
  return o;
}

std::string g_cli;  // path to the thermoprobe executable, empty: call the library

struct Run {
  std::string out;
  double secs = 0.0;
  int status = -1;
};

Run run_cli(const std::string& args) {
  Run r;
  const auto t0 = std::chrono::steady_clock::now();
  FILE* p = popen(("\"" + g_cli + "\" " + args + " 2>/dev/null").c_str(), "r");
  if (p == nullptr) return r;
  char buf[1 << 16];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  r.status = pclose(p);
  r.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Run run_lib(th::FigureId id, int workers, bool json) {
  th::SweepConfig c;
  c.workers = workers;
  Run r;
  const auto t0 = std::chrono::steady_clock::now();
  const th::Dataset d = th::run_figure(id, c);
  r.out = json ? th::to_json(d) : th::to_csv(d);
  r.secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.status = 0;
  return r;
}

Outcome figure_datasets() {
  Outcome o;
  if (g_cli.empty()) o.detail = "library mode";
  for (th::FigureId id : {th::FigureId::Fig2, th::FigureId::Fig3, th::FigureId::Fig4,
                          th::FigureId::Fig5}) {
    const std::string name = th::to_string(id);
    auto go = [&](int workers, bool json) {
      if (g_cli.empty()) return run_lib(id, workers, json);
      return run_cli("--workers " + std::to_string(workers) + (json ? " --format json" : "") +
                     " figure " + name);
    };
    const Run a = go(1, false), b = go(1, false), w4 = go(4, false), w8 = go(8, false);
    const Run ja = go(1, true), jb = go(8, true);
    const bool ok_exit = a.status == 0 && b.status == 0 && w4.status == 0 && w8.status == 0 &&
                         ja.status == 0 && jb.status == 0 && !a.out.empty();
    const bool same = a.out == b.out && a.out == w4.out && a.out == w8.out && ja.out == jb.out;
    const double worst = std::max({a.secs, b.secs, w4.secs, w8.secs, ja.secs, jb.secs});
    o.require(ok_exit && same && worst < 5.0,
              name + " " + fmt("%.3f s", worst) + (same ? " reproducible" : " NOT reproducible") +
                  (ok_exit ? "" : " (bad exit)"));
  }
  return o;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "fermi-moment oracle", 1.0, fermi_moments},
      {2, "onsager-casimir symmetry", 10.0, onsager_casimir},
      {3, "reduction consistency", 5.0, reduction_consistency},
      {4, "buttiker coincidence", 1.0, buttiker_coincidence},
      {5, "normalized-efficiency fixed point", 0.0, fixed_point},
      {6, "curzon-ahlborn bound", 0.0, curzon_ahlborn},
      {7, "bound inequalities on the full grid", 60.0, bound_inequalities},
      {8, "d_m sign structure", 0.0, sign_structure},
      {9, "max-power stationarity", 0.0, max_power_stationarity},
      {10, "figure datasets", 0.0, figure_datasets},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--cli", g_cli, "thermoprobe executable for criterion 10");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0) o.require(secs < c.budget_s, "runtime budget " + fmt("%g s", c.budget_s));
    std::printf("%s criterion %2d %-36s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                secs, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
