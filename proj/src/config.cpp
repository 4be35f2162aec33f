#include "gfc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

namespace gfc {

using nlohmann::json;

PotentialSpec RunConfig::potential() const {
  if (potential_kind == "quadratic") return quadratic_potential(mu, beta);
  if (potential_kind == "polynomial") return polynomial_potential(poly_coeffs, beta);
  if (potential_kind == "expression") return parse_potential(potential_expr, beta);
  if (potential_kind == "tabulated") return tabulated_potential(tabulated, beta);
  throw ConfigError("potential.kind: unknown kind '" + potential_kind + "'");
}

double RunConfig::resolved_min() const {
  if (domain_min) return *domain_min;
  if (potential_kind == "quadratic") return -10.0 * std::sqrt(mu / beta);
  throw ConfigError("domain.min: required for non-quadratic potentials");
}

double RunConfig::resolved_max() const {
  if (domain_max) return *domain_max;
  if (potential_kind == "quadratic") return 10.0 * std::sqrt(mu / beta);
  throw ConfigError("domain.max: required for non-quadratic potentials");
}

Grid RunConfig::grid() const { return Grid(resolved_min(), resolved_max(), n); }

void RunConfig::validate() const {
  if (!(beta > 0.0)) throw ConfigError("beta: must be positive");
  if (n < 3) throw ConfigError("domain.n: must be at least 3");
  if (!(t_final >= 0.0)) throw ConfigError("time.t_final: must be nonnegative");
  if (!(dt > 0.0)) throw ConfigError("time.dt: must be positive");
  if (checkpoints < 1) throw ConfigError("time.checkpoints: must be at least 1");
  if (modes < 2) throw ConfigError("modes: must be at least 2");
  if (modes > n) throw ConfigError("modes: cannot exceed domain.n");
  if (observables.empty()) throw ConfigError("observables: need at least one");
  if (!(eigen_residual_tol > 0.0)) throw ConfigError("tolerances.eigen_residual: must be positive");
  if (!(tolerance_scale > 0.0)) throw ConfigError("tolerances.scale: must be positive");
  if (resolved_max() <= resolved_min()) throw ConfigError("domain.max: must exceed domain.min");
  potential().validate();
}

RunConfig gaussian_preset() {
  RunConfig cfg;
  cfg.beta = 1.0;
  cfg.mu = 1.0;
  cfg.potential_kind = "quadratic";
  cfg.domain_min = -10.0;
  cfg.domain_max = 10.0;
  cfg.n = 2001;
  cfg.observables = {"x"};
  cfg.q_scan = {0.0, 0.5, 1.0};
  cfg.modes = 32;
  cfg.dt = 1e-3;
  cfg.t_final = 1.0;
  cfg.checkpoints = 100;
  return cfg;
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(prefix + it.key() + ": unknown key");
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return j.get<int>();
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");

  reject_unknown(doc, {"beta", "potential", "domain", "observables", "q", "modes", "time",
                       "tolerances", "output"},
                 "");

  RunConfig cfg;
  cfg.q_scan.clear();
  if (doc.contains("beta")) cfg.beta = get_number(doc["beta"], "beta");

  if (doc.contains("potential")) {
    const json& p = doc["potential"];
    if (p.is_string()) {
      cfg.potential_kind = "expression";
      cfg.potential_expr = p.get<std::string>();
    } else if (p.is_object()) {
      reject_unknown(p, {"kind", "mu", "coefficients", "values", "expr"}, "potential.");
      if (!p.contains("kind")) throw ConfigError("potential.kind: missing");
      cfg.potential_kind = p["kind"].get<std::string>();
      if (cfg.potential_kind == "quadratic") {
        if (!p.contains("mu")) throw ConfigError("potential.mu: missing");
        cfg.mu = get_number(p["mu"], "potential.mu");
      } else if (cfg.potential_kind == "polynomial") {
        if (!p.contains("coefficients")) throw ConfigError("potential.coefficients: missing");
        cfg.poly_coeffs = p["coefficients"].get<std::vector<double>>();
      } else if (cfg.potential_kind == "expression") {
        if (!p.contains("expr")) throw ConfigError("potential.expr: missing");
        cfg.potential_expr = p["expr"].get<std::string>();
      } else if (cfg.potential_kind == "tabulated") {
        if (!p.contains("values")) throw ConfigError("potential.values: missing");
        cfg.tabulated = p["values"].get<std::vector<double>>();
      } else {
        throw ConfigError("potential.kind: unknown kind '" + cfg.potential_kind + "'");
      }
    } else {
      throw ConfigError("potential: expected string or object");
    }
  }

  if (doc.contains("domain")) {
    const json& d = doc["domain"];
    if (!d.is_object()) throw ConfigError("domain: expected an object");
    reject_unknown(d, {"min", "max", "n"}, "domain.");
    if (d.contains("min")) cfg.domain_min = get_number(d["min"], "domain.min");
    if (d.contains("max")) cfg.domain_max = get_number(d["max"], "domain.max");
    if (d.contains("n")) cfg.n = get_int(d["n"], "domain.n");
  }

  if (doc.contains("observables")) {
    if (!doc["observables"].is_array()) throw ConfigError("observables: expected an array");
    cfg.observables = doc["observables"].get<std::vector<std::string>>();
  }

  if (doc.contains("q")) {
    if (!doc["q"].is_array()) throw ConfigError("q: expected an array");
    cfg.q_scan = doc["q"].get<std::vector<double>>();
  }
  if (cfg.q_scan.empty()) cfg.q_scan = {0.0};

  if (doc.contains("modes")) cfg.modes = get_int(doc["modes"], "modes");

  if (doc.contains("time")) {
    const json& t = doc["time"];
    if (!t.is_object()) throw ConfigError("time: expected an object");
    reject_unknown(t, {"t_final", "dt", "checkpoints"}, "time.");
    if (t.contains("t_final")) cfg.t_final = get_number(t["t_final"], "time.t_final");
    if (t.contains("dt")) cfg.dt = get_number(t["dt"], "time.dt");
    if (t.contains("checkpoints")) cfg.checkpoints = get_int(t["checkpoints"], "time.checkpoints");
  }

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw ConfigError("tolerances: expected an object");
    reject_unknown(t, {"eigen_residual", "degeneracy_rtol", "scale", "sensitivity_step"},
                   "tolerances.");
    if (t.contains("eigen_residual"))
      cfg.eigen_residual_tol = get_number(t["eigen_residual"], "tolerances.eigen_residual");
    if (t.contains("degeneracy_rtol"))
      cfg.degeneracy_rtol = get_number(t["degeneracy_rtol"], "tolerances.degeneracy_rtol");
    if (t.contains("scale")) cfg.tolerance_scale = get_number(t["scale"], "tolerances.scale");
    if (t.contains("sensitivity_step"))
      cfg.sensitivity_step = get_number(t["sensitivity_step"], "tolerances.sensitivity_step");
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) throw ConfigError("output: expected an object");
    reject_unknown(o, {"dir"}, "output.");
    if (o.contains("dir")) cfg.out_dir = o["dir"].get<std::string>();
  }

  cfg.validate();
  return cfg;
}

}  // namespace gfc
