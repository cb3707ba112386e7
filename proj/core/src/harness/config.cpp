#include "thermoprobe/harness/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>

#include "thermoprobe/errors.hpp"

namespace thermoprobe::harness {
namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ValidationError(where, "must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ValidationError(where + "." + key, "unknown key");
  }
}

template <class T>
T read(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(field, e.what());
  }
}

GridSpec read_grid(const json& j, const std::string& field, GridSpec grid) {
  require_keys(j, field, {"min", "max", "count"});
  if (j.contains("min")) grid.min = read<double>(j["min"], field + ".min");
  if (j.contains("max")) grid.max = read<double>(j["max"], field + ".max");
  if (j.contains("count")) grid.count = read<int>(j["count"], field + ".count");
  return grid;
}

json grid_json(const GridSpec& g) {
  return nlohmann::ordered_json{{"min", g.min}, {"max", g.max}, {"count", g.count}};
}

std::array<double, 3> read_triple(const json& j, const std::string& field) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return {v, v, v};
  }
  const auto v = read<std::vector<double>>(j, field);
  if (v.size() != 3) throw ValidationError(field, "expects 3 values (L, P, R)");
  return {v[0], v[1], v[2]};
}

void require_finite_list(const std::vector<double>& v, const std::string& field) {
  if (v.empty()) throw ValidationError(field, "must not be empty");
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError(field, "values must be finite");
  }
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double span = max - min;
  for (int i = 0; i < count; ++i) {
    out[i] = (i + 1 == count) ? max : min + span * i / (count - 1);
  }
  return out;
}

std::vector<double> SweepConfig::phi_points() const {
  return phi_values.empty() ? phi.values() : phi_values;
}

void GridSpec::validate(const std::string& field) const {
  if (count < 2) throw ValidationError(field + ".count", "must be at least 2");
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw ValidationError(field, "range must be finite");
  }
  if (!(max > min)) throw ValidationError(field, "range is degenerate (max <= min)");
}

const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

Branch parse_branch(const std::string& text) {
  if (text == "plus" || text == "PLUS" || text == "+") return Branch::Plus;
  if (text == "minus" || text == "MINUS" || text == "-") return Branch::Minus;
  throw ValidationError("branch", "expected plus or minus, got '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv" || text == "CSV") return OutputFormat::Csv;
  if (text == "json" || text == "JSON") return OutputFormat::Json;
  throw ValidationError("format", "expected csv or json, got '" + text + "'");
}

Regime parse_regime(const std::string& text) {
  if (text == "L") return Regime::L;
  if (text == "P") return Regime::P;
  if (text == "LP") return Regime::LP;
  if (text == "REFRIGERATOR") return Regime::Refrigerator;
  throw ValidationError("regime_filter", "unknown regime '" + text + "'");
}

void SweepConfig::validate() const {
  model.validate();
  if (!(temperature > 0.0)) throw ValidationError("model.temperature", "must be positive");
  if (!std::isfinite(mu)) throw ValidationError("model.mu", "must be finite");
  phi.validate("grids.phi");
  delta.validate("grids.delta");
  epsilon.validate("grids.epsilon");
  power_gain.validate("grids.power_gain");
  x.validate("grids.x");
  for (double v : phi_values) {
    if (!std::isfinite(v)) throw ValidationError("grids.phi_values", "values must be finite");
  }
  if (power_gain.min < -1.0 || power_gain.max > 0.0) {
    throw ValidationError("grids.power_gain", "must lie within [-1, 0]");
  }
  if (!(epsilon.min > 0.0) || !(epsilon.max < 2.0)) {
    throw ValidationError("grids.epsilon", "must lie within the open interval (0, 2)");
  }
  require_finite_list(delta_t_left, "forces.delta_t_left");
  for (double v : delta_t_left) {
    if (v == 0.0) throw ValidationError("forces.delta_t_left", "values must be nonzero");
  }
  require_finite_list(fig2_d_values, "figures.fig2_d_values");
  require_finite_list(d_values, "figures.d_values");
  require_finite_list(y_values, "figures.y_values");
  if (regime_filter.empty()) throw ValidationError("regime_filter", "must not be empty");
  if (!(quadrature.window > 0.0)) throw ValidationError("quadrature.window", "must be positive");
  if (!(quadrature.abs_tol > 0.0)) throw ValidationError("quadrature.abs_tol", "must be positive");
  if (quadrature.max_depth < 1) throw ValidationError("quadrature.max_depth", "must be >= 1");
  if (quadrature.initial_panels < 1) {
    throw ValidationError("quadrature.initial_panels", "must be >= 1");
  }
  if (workers < 1) throw ValidationError("workers", "must be >= 1");
  if (!(tolerance > 0.0)) throw ValidationError("tolerance", "must be positive");
  if (output_path.empty()) throw ValidationError("output.path", "must not be empty");
}

nlohmann::ordered_json SweepConfig::to_json() const {
  nlohmann::ordered_json regimes = nlohmann::ordered_json::array();
  for (Regime r : regime_filter) regimes.push_back(thermoprobe::to_string(r));
  return {
      {"model",
       {{"site_energies", model.site_energies},
        {"couplings", model.couplings},
        {"hopping", model.hopping},
        {"phi", model.phi},
        {"temperature", temperature},
        {"mu", mu}}},
      {"grids",
       {{"phi", grid_json(phi)},
        {"delta", grid_json(delta)},
        {"epsilon", grid_json(epsilon)},
        {"power_gain", grid_json(power_gain)},
        {"x", grid_json(x)},
        {"phi_values", phi_values}}},
      {"forces", {{"delta_t_left", delta_t_left}}},
      {"figures",
       {{"fig2_d_values", fig2_d_values}, {"d_values", d_values}, {"y_values", y_values}}},
      {"regime_filter", regimes},
      {"branch", branch == Branch::Plus ? "plus" : "minus"},
      {"quadrature",
       {{"window", quadrature.window},
        {"abs_tol", quadrature.abs_tol},
        {"max_depth", quadrature.max_depth},
        {"initial_panels", quadrature.initial_panels}}},
      {"output", {{"format", to_string(format)}, {"path", output_path}}},
      {"workers", workers},
      {"tolerance", tolerance},
      {"timestamp", timestamp},
  };
}

SweepConfig SweepConfig::from_json(const json& j) {
  SweepConfig c;
  require_keys(j, "config",
               {"model", "grids", "forces", "figures", "regime_filter", "branch",
                "quadrature", "output", "workers", "tolerance", "timestamp"});
  if (j.contains("model")) {
    const json& m = j["model"];
    require_keys(m, "model",
                 {"site_energies", "couplings", "hopping", "phi", "temperature", "mu"});
    if (m.contains("site_energies"))
      c.model.site_energies = read_triple(m["site_energies"], "model.site_energies");
    if (m.contains("couplings"))
      c.model.couplings = read_triple(m["couplings"], "model.couplings");
    if (m.contains("hopping")) c.model.hopping = read<double>(m["hopping"], "model.hopping");
    if (m.contains("phi")) c.model.phi = read<double>(m["phi"], "model.phi");
    if (m.contains("temperature"))
      c.temperature = read<double>(m["temperature"], "model.temperature");
    if (m.contains("mu")) c.mu = read<double>(m["mu"], "model.mu");
  }
  if (j.contains("grids")) {
    const json& g = j["grids"];
    require_keys(g, "grids", {"phi", "delta", "epsilon", "power_gain", "x", "phi_values"});
    if (g.contains("phi")) c.phi = read_grid(g["phi"], "grids.phi", c.phi);
    if (g.contains("delta")) c.delta = read_grid(g["delta"], "grids.delta", c.delta);
    if (g.contains("epsilon")) c.epsilon = read_grid(g["epsilon"], "grids.epsilon", c.epsilon);
    if (g.contains("power_gain"))
      c.power_gain = read_grid(g["power_gain"], "grids.power_gain", c.power_gain);
    if (g.contains("x")) c.x = read_grid(g["x"], "grids.x", c.x);
    if (g.contains("phi_values"))
      c.phi_values = read<std::vector<double>>(g["phi_values"], "grids.phi_values");
  }
  if (j.contains("forces")) {
    require_keys(j["forces"], "forces", {"delta_t_left"});
    if (j["forces"].contains("delta_t_left"))
      c.delta_t_left =
          read<std::vector<double>>(j["forces"]["delta_t_left"], "forces.delta_t_left");
  }
  if (j.contains("figures")) {
    const json& f = j["figures"];
    require_keys(f, "figures", {"fig2_d_values", "d_values", "y_values"});
    if (f.contains("fig2_d_values"))
      c.fig2_d_values = read<std::vector<double>>(f["fig2_d_values"], "figures.fig2_d_values");
    if (f.contains("d_values"))
      c.d_values = read<std::vector<double>>(f["d_values"], "figures.d_values");
    if (f.contains("y_values"))
      c.y_values = read<std::vector<double>>(f["y_values"], "figures.y_values");
  }
  if (j.contains("regime_filter")) {
    c.regime_filter.clear();
    for (const auto& r : read<std::vector<std::string>>(j["regime_filter"], "regime_filter")) {
      c.regime_filter.push_back(parse_regime(r));
    }
  }
  if (j.contains("branch")) c.branch = parse_branch(read<std::string>(j["branch"], "branch"));
  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    require_keys(q, "quadrature", {"window", "abs_tol", "max_depth", "initial_panels"});
    if (q.contains("window")) c.quadrature.window = read<double>(q["window"], "quadrature.window");
    if (q.contains("abs_tol"))
      c.quadrature.abs_tol = read<double>(q["abs_tol"], "quadrature.abs_tol");
    if (q.contains("max_depth"))
      c.quadrature.max_depth = read<int>(q["max_depth"], "quadrature.max_depth");
    if (q.contains("initial_panels"))
      c.quadrature.initial_panels = read<int>(q["initial_panels"], "quadrature.initial_panels");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    require_keys(o, "output", {"format", "path"});
    if (o.contains("format")) c.format = parse_format(read<std::string>(o["format"], "output.format"));
    if (o.contains("path")) c.output_path = read<std::string>(o["path"], "output.path");
  }
  if (j.contains("workers")) c.workers = read<int>(j["workers"], "workers");
  if (j.contains("tolerance")) c.tolerance = read<double>(j["tolerance"], "tolerance");
  if (j.contains("timestamp")) c.timestamp = read<std::string>(j["timestamp"], "timestamp");
  return c;
}

SweepConfig load_config(const std::filesystem::path* path) {
  SweepConfig config;
  bool workers_pinned = false;
  bool timestamp_pinned = false;
  if (path != nullptr) {
    std::ifstream in(*path);
    if (!in) throw ValidationError("config", "cannot open " + path->string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ValidationError("config", e.what());
    }
    config = SweepConfig::from_json(j);
    workers_pinned = j.contains("workers");
    timestamp_pinned = j.contains("timestamp");
  }
  if (!timestamp_pinned) {
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
      char* end = nullptr;
      const long long secs = std::strtoll(env, &end, 10);
      if (end == env || *end != '\0' || secs < 0) {
        throw ValidationError("SOURCE_DATE_EPOCH", "must be a non-negative integer");
      }
      const std::time_t tt = static_cast<std::time_t>(secs);
      std::tm tm{};
      gmtime_r(&tt, &tm);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
      config.timestamp = buf;
    }
  }
  if (!workers_pinned) {
    if (const char* env = std::getenv(kWorkersEnv)) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 1) {
        throw ValidationError(kWorkersEnv, "must be a positive integer");
      }
      config.workers = static_cast<int>(v);
    }
  }
  return config;
}

std::string config_fingerprint(const SweepConfig& config) {
  nlohmann::ordered_json j = config.to_json();
  // Output routing and parallelism do not change the computed values.
  j.erase("output");
  j.erase("workers");
  const std::string text = j.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace thermoprobe::harness
