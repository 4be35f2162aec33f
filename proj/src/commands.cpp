#include "gfc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "gfc/contact.hpp"
#include "gfc/evolution.hpp"
#include "gfc/log.hpp"
#include "gfc/operator_zoo.hpp"
#include "gfc/reporting.hpp"
#include "gfc/spectral.hpp"
#include "gfc/thermo.hpp"

namespace gfc::commands {

using nlohmann::json;

namespace {

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = a + (b - a) * i / (count - 1);
  return out;
}

double sup_abs(const Field0& f) {
  double m = 0.0;
  for (double v : f.v) m = std::max(m, std::fabs(v));
  return m;
}

/// Smooth deterministic probe field spanning a few wavelengths of the
/// domain; used by the identity checks.
Field0 probe_field(const Grid& grid, int variant) {
  Field0 f(grid.n);
  const double l = grid.x_max - grid.x_min;
  for (int i = 0; i < grid.n; ++i) {
    const double u = 2.0 * M_PI * (grid.x[i] - grid.x_min) / l;
    switch (variant % 3) {
      case 0: f[i] = std::sin(3.0 * u) + 0.3 * std::cos(6.0 * u); break;
      case 1: f[i] = std::cos(2.0 * u) + 0.2 * std::sin(5.0 * u); break;
      default: f[i] = std::sin(4.0 * u) * (1.0 + 0.1 * std::cos(u)); break;
    }
  }
  return f;
}

struct Check {
  std::string name;
  std::string claim;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

Check make_check(std::string name, std::string claim, double residual, double tolerance,
                 std::string note = "") {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = residual <= tolerance;
  c.note = std::move(note);
  return c;
}

json to_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json j{{"name", c.name},
           {"paper_ref", c.claim},
           {"residual", c.residual},
           {"tolerance", c.tolerance},
           {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(j);
  }
  return arr;
}

/// Normalized sup distance over interior nodes.
double interior_rel_sup(const Field0& a, const Field0& b) {
  double diff = 0.0, scale = 1.0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    diff = std::max(diff, std::fabs(a[i] - b[i]));
    scale = std::max({scale, std::fabs(a[i]), std::fabs(b[i])});
  }
  return diff / scale;
}

struct IdentityResiduals {
  double lap_vs_L;      // Delta_G phi vs beta L_{beta,h} phi
  double li_vs_lap;     // li_rhs vs -Delta_G/beta
  double fp_vs_lap;     // fp_rhs(rho_G phi) vs -rho_G Delta_G phi / beta
  double dd_direct_vs_expanded;
};

IdentityResiduals identity_residuals(const GibbsState& gibbs, const WeightedLaplacian& lap,
                                     int variant) {
  const Field0 phi = probe_field(gibbs.grid, variant);
  const Field0 lg = lap.apply(phi);
  IdentityResiduals r{};

  Field0 bl = L_beta_h(phi, gibbs);
  for (double& v : bl.v) v *= gibbs.beta;
  r.lap_vs_L = interior_rel_sup(lg, bl);

  Field0 li = li_rhs(phi, gibbs);
  Field0 mlg = lg;
  for (double& v : mlg.v) v *= -1.0 / gibbs.beta;
  r.li_vs_lap = interior_rel_sup(li, mlg);

  Field0 rho_phi(gibbs.n());
  for (int i = 0; i < gibbs.n(); ++i) rho_phi[i] = gibbs.rho[i] * phi[i];
  const Field0 fp = fp_rhs(rho_phi, gibbs);
  Field0 target(gibbs.n());
  for (int i = 0; i < gibbs.n(); ++i) target[i] = -gibbs.rho[i] * lg[i] / gibbs.beta;
  r.fp_vs_lap = interior_rel_sup(fp, target);

  const WittenResult dd = witten_variants(phi, gibbs, OperatorVariant::D_dagger_D);
  r.dd_direct_vs_expanded = interior_rel_sup(dd.primary, *dd.expanded);
  return r;
}

ScalarFieldQ psi_field(const ObservableSet& obs, const GibbsState& gibbs) {
  // single-entry memo: the relaxation flow keeps q fixed, so the
  // quadrature would otherwise rerun unchanged at every RK4 stage
  struct Cache {
    std::vector<double> q;
    PsiG psi;
    bool valid = false;
  };
  auto cache = std::make_shared<Cache>();
  auto eval = [&obs, &gibbs, cache](const std::vector<double>& q) -> const PsiG& {
    if (!cache->valid || cache->q != q) {
      cache->psi = psi_G(q, obs, gibbs, 1);
      cache->q = q;
      cache->valid = true;
    }
    return cache->psi;
  };
  ScalarFieldQ f;
  f.value = [eval](const std::vector<double>& q) { return eval(q).value; };
  f.grad = [eval](const std::vector<double>& q) { return eval(q).grad; };
  return f;
}

}  // namespace

Workspace build_workspace(const RunConfig& cfg) {
  cfg.validate();
  Workspace ws{cfg.grid(), GibbsState{}, ObservableSet{}, WeightedLaplacian{}, Spectrum{}};
  ws.gibbs = gibbs_state(cfg.potential(), ws.grid);
  ws.observables = make_observables(cfg.observables, ws.grid);
  ws.laplacian = laplacian_G(ws.gibbs);
  ws.spectrum = eigendecompose(ws.laplacian, cfg.modes, cfg.eigen_residual_tol);
  return ws;
}

std::string spectrum_csv(const RunConfig&, const Workspace& ws) {
  // mode samples at nine evenly spaced locations
  std::vector<int> sample_idx;
  for (int j = 0; j <= 8; ++j) sample_idx.push_back(j * (ws.grid.n - 1) / 8);
  std::ostringstream out;
  out << "s,lambda,residual";
  for (int idx : sample_idx) out << ",phi_at_" << fmt17(ws.grid.x[idx]);
  out << "\n";
  for (int s = 0; s < ws.spectrum.count(); ++s) {
    out << s << "," << fmt17(ws.spectrum.eigenvalues[s]) << ","
        << fmt17(ws.spectrum.residuals[s]);
    for (int idx : sample_idx) out << "," << fmt17(ws.spectrum.modes[s][idx]);
    out << "\n";
  }
  return out.str();
}

std::string trajectory_csv(const RunConfig& cfg, const Workspace& ws) {
  const int n_band = std::min(8, cfg.modes);
  const ModeCoefficients coeffs =
      band_limited_profile(ws.spectrum, n_band, 0.5, cfg.beta);
  StateField phi0 = propagate(coeffs, 0.0, ws.spectrum);

  const double interval = cfg.t_final / cfg.checkpoints;
  const int steps_per = std::max(1, static_cast<int>(std::lround(interval / cfg.dt)));
  const double dt_eff = interval / steps_per;

  std::ostringstream out;
  out << "t,mass_spectral,lyapunov_spectral,free_energy_spectral,entropy_spectral,"
         "energy_spectral,mass_cn,lyapunov_cn,free_energy_cn,entropy_cn,energy_cn";
  if (cfg.with_mode_columns)
    for (int s = 1; s < ws.spectrum.count(); ++s) out << ",a_" << s;
  out << "\n";

  StateField cn = phi0;
  for (int c = 0; c <= cfg.checkpoints; ++c) {
    const double t = c * interval;
    const StateField sp = propagate(coeffs, t, ws.spectrum);
    const TrajectorySample ss = sample_state(sp, ws.gibbs);
    const TrajectorySample sc = sample_state(cn, ws.gibbs);
    out << fmt17(t) << "," << fmt17(ss.mass) << "," << fmt17(ss.lyapunov) << ","
        << fmt17(ss.free_energy) << "," << fmt17(ss.entropy) << "," << fmt17(ss.energy) << ","
        << fmt17(sc.mass) << "," << fmt17(sc.lyapunov) << "," << fmt17(sc.free_energy) << ","
        << fmt17(sc.entropy) << "," << fmt17(sc.energy);
    if (cfg.with_mode_columns) {
      const ModeCoefficients at = propagate_coeffs(coeffs, t, ws.spectrum);
      for (int s = 1; s < ws.spectrum.count(); ++s) out << "," << fmt17(at.a[s]);
    }
    out << "\n";
    if (c < cfg.checkpoints)
      for (int k = 0; k < steps_per; ++k) cn = step_crank_nicolson(cn, dt_eff, ws.laplacian);
  }
  return out.str();
}

std::string contact_csv(const RunConfig& cfg, const Workspace& ws) {
  const std::vector<int> group = slow_group(ws.spectrum, cfg.degeneracy_rtol);
  const double gamma1 = ws.spectrum.eigenvalues[group.front()] / cfg.beta;
  const std::vector<double> q(ws.observables.count(), cfg.q_scan.front());

  ModeCoefficients coeffs{std::vector<double>(ws.spectrum.count(), 0.0), cfg.beta};
  coeffs.a[0] = 1.0;
  coeffs.a[group.front()] = 0.2;
  const StateField bar0 = propagate_slowest(coeffs, group, 0.0, ws.spectrum);
  const Moments m0 = moment_observables(bar0, q, ws.observables, ws.gibbs);

  ContactHamiltonianSpec H = relaxation_hamiltonian(gamma1, psi_field(ws.observables, ws.gibbs));
  ThermoPoint pt0{m0.p, q, m0.z};
  const int steps = std::max(1, static_cast<int>(std::lround(cfg.t_final / cfg.dt)));
  const ContactTrajectory traj = flow_rk4(H, pt0, cfg.t_final / steps, steps);

  std::ostringstream out;
  out << "t";
  for (std::size_t j = 0; j < q.size(); ++j) out << ",q_" << (j + 1);
  for (std::size_t j = 0; j < q.size(); ++j) out << ",p_" << (j + 1);
  out << ",z,H\n";
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out << fmt17(traj.t[i]);
    for (double v : traj.points[i].q) out << "," << fmt17(v);
    for (double v : traj.points[i].p) out << "," << fmt17(v);
    out << "," << fmt17(traj.points[i].z) << "," << fmt17(traj.hamiltonian[i]) << "\n";
  }
  return out.str();
}

std::string psi_csv(const RunConfig& cfg, const Workspace& ws) {
  const std::size_t nb = ws.observables.count();
  std::ostringstream out;
  for (std::size_t j = 0; j < nb; ++j) out << (j ? "," : "") << "q_" << (j + 1);
  out << ",psi";
  for (std::size_t j = 0; j < nb; ++j) out << ",grad_" << (j + 1);
  out << ",hessian_min_eig,hessian_max_eig\n";
  for (double qv : cfg.q_scan) {
    const std::vector<double> q(nb, qv);
    const PsiG p = psi_G(q, ws.observables, ws.gibbs, 2);
    for (std::size_t j = 0; j < nb; ++j) out << (j ? "," : "") << fmt17(q[j]);
    out << "," << fmt17(p.value);
    for (std::size_t j = 0; j < nb; ++j) out << "," << fmt17(p.grad[j]);
    // flip the sign to reuse the minimum-eigenvalue routine
    std::vector<std::vector<double>> neg = p.hess;
    for (auto& row : neg)
      for (double& v : row) v = -v;
    out << "," << fmt17(min_eigenvalue_sym(p.hess)) << ","
        << fmt17(-min_eigenvalue_sym(neg)) << "\n";
  }
  return out.str();
}

json equivalence_report(const RunConfig& cfg, const Workspace& ws) {
  const std::vector<int> group = slow_group(ws.spectrum, cfg.degeneracy_rtol);
  ModeCoefficients coeffs{std::vector<double>(ws.spectrum.count(), 0.0), cfg.beta};
  coeffs.a[0] = 1.0;
  coeffs.a[group.front()] = 0.2;
  const StateField phi0 = propagate_slowest(coeffs, group, 0.0, ws.spectrum);
  const std::vector<double> tg = linspace(0.0, std::max(cfg.t_final, 1e-9), cfg.checkpoints + 1);

  const double tol = 1e-10 * cfg.tolerance_scale;
  json per_q = json::array();
  bool all = true;
  for (double qv : cfg.q_scan) {
    const std::vector<double> q(ws.observables.count(), qv);
    const EquivalenceReport rep = equivalence_check(ws.gibbs, ws.observables, q, phi0, tg,
                                                    ws.spectrum, cfg.degeneracy_rtol);
    const bool pass = rep.max_z_discrepancy <= tol && rep.max_p_discrepancy <= tol;
    all = all && pass;
    per_q.push_back(json{{"q", qv},
                         {"gamma1", rep.gamma1},
                         {"psi", rep.psi},
                         {"max_z_discrepancy", rep.max_z_discrepancy},
                         {"max_p_discrepancy", rep.max_p_discrepancy},
                         {"legendrian_distance_initial", rep.legendrian_distance_initial},
                         {"legendrian_distance_final", rep.legendrian_distance_final},
                         {"tolerance", tol},
                         {"pass", pass}});
  }
  return json{{"t_final", tg.back()}, {"samples", tg.size()}, {"per_q", per_q}, {"pass", all}};
}

json tilted_report(const RunConfig& cfg, const Workspace& ws) {
  const PotentialSpec pot = cfg.potential();
  const std::vector<int> group = slow_group(ws.spectrum, cfg.degeneracy_rtol);
  const double lam1 = ws.spectrum.eigenvalues[group.front()];

  std::vector<json> rows_v(cfg.q_scan.size());
  auto run_q = [&](std::size_t qi) {
    const double qv = cfg.q_scan[qi];
    const std::vector<double> q(ws.observables.count(), qv);
    const GibbsState tg = gibbs_state(tilt(pot, q, ws.observables, ws.grid), ws.grid);
    const Spectrum ts = eigendecompose(laplacian_G(tg), 3, cfg.eigen_residual_tol);
    const double lt1 = ts.eigenvalues[1];
    const std::vector<double> sens = lambda1_sensitivity(pot, ws.observables, q,
                                                         cfg.sensitivity_step, ws.grid,
                                                         cfg.degeneracy_rtol);

    // tilted field against the plain relaxation field at ten
    // deterministic phase points around the Legendrian
    const PsiG psi = psi_G(q, ws.observables, ws.gibbs, 1);
    DetRng rng(2024);
    double max_diff = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      ThermoPoint pt;
      pt.q = q;
      pt.p.resize(q.size());
      for (std::size_t j = 0; j < q.size(); ++j) pt.p[j] = psi.grad[j] + rng.next();
      pt.z = psi.value + rng.next();
      const Tangent tilted = tilted_contact_tangent(cfg.beta, lt1, sens, psi.value, psi.grad, pt);
      ThermoPoint rp = pt;
      Tangent relax;
      relax.qdot.assign(q.size(), 0.0);
      relax.pdot.resize(q.size());
      const double g1 = lam1 / cfg.beta;
      for (std::size_t j = 0; j < q.size(); ++j)
        relax.pdot[j] = g1 * (psi.grad[j] - rp.p[j]);
      relax.zdot = g1 * (psi.value - rp.z);
      for (std::size_t j = 0; j < q.size(); ++j)
        max_diff = std::max(max_diff, std::fabs(tilted.pdot[j] - relax.pdot[j]));
      max_diff = std::max(max_diff, std::fabs(tilted.zdot - relax.zdot));
    }

    json row{{"q", qv},
             {"lambda1_tilted", lt1},
             {"lambda1_plain", lam1},
             {"sensitivity", sens},
             {"field_difference_max", max_diff},
             {"eigenvalues", ts.eigenvalues}};
    if (pot.kind == PotentialSpec::Kind::quadratic)
      row["relative_error_vs_beta_over_mu"] =
          std::fabs(lt1 - cfg.beta / cfg.mu) / (cfg.beta / cfg.mu);
    rows_v[qi] = row;
  };

  if (cfg.parallel) {
    std::vector<std::thread> pool;
    for (std::size_t qi = 0; qi < cfg.q_scan.size(); ++qi) pool.emplace_back(run_q, qi);
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t qi = 0; qi < cfg.q_scan.size(); ++qi) run_q(qi);
  }
  json rows = json::array();
  for (auto& r : rows_v) rows.push_back(std::move(r));
  return json{{"per_q", rows}};
}

std::string convergence_csv(const RunConfig& cfg) {
  const std::vector<int> sizes{251, 501, 1001, 2001};
  struct Row {
    double dx;
    double lambda1_err;
    IdentityResiduals ids;
  };
  std::vector<Row> rows(sizes.size());

  auto run_one = [&](std::size_t i) {
    RunConfig c = cfg;
    c.n = sizes[i];
    c.modes = std::min(cfg.modes, 8);
    const Grid grid = c.grid();
    const GibbsState gibbs = gibbs_state(c.potential(), grid);
    const WeightedLaplacian lap = laplacian_G(gibbs);
    const Spectrum spec = eigendecompose(lap, 2, c.eigen_residual_tol);
    Row r;
    r.dx = grid.dx;
    if (c.potential_kind == "quadratic")
      r.lambda1_err = std::fabs(spec.eigenvalues[1] - c.beta / c.mu) / (c.beta / c.mu);
    else
      r.lambda1_err = std::numeric_limits<double>::quiet_NaN();
    r.ids = identity_residuals(gibbs, lap, 0);
    rows[i] = r;
  };

  if (cfg.parallel) {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < sizes.size(); ++i) pool.emplace_back(run_one, i);
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < sizes.size(); ++i) run_one(i);
  }

  std::ostringstream out;
  out << "n,dx,lambda1_rel_error,res_lap_vs_L,res_li_vs_lap,res_fp_vs_lap,res_dd\n";
  std::vector<double> hs, e0, e1, e2, e3, e4;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const Row& r = rows[i];
    out << sizes[i] << "," << fmt17(r.dx) << "," << fmt17(r.lambda1_err) << ","
        << fmt17(r.ids.lap_vs_L) << "," << fmt17(r.ids.li_vs_lap) << ","
        << fmt17(r.ids.fp_vs_lap) << "," << fmt17(r.ids.dd_direct_vs_expanded) << "\n";
    hs.push_back(r.dx);
    e0.push_back(r.lambda1_err);
    e1.push_back(r.ids.lap_vs_L);
    e2.push_back(r.ids.li_vs_lap);
    e3.push_back(r.ids.fp_vs_lap);
    e4.push_back(r.ids.dd_direct_vs_expanded);
  }
  out << "fitted_order,," << fmt17(std::isnan(e0.front()) ? NAN : fitted_order(hs, e0)) << ","
      << fmt17(fitted_order(hs, e1)) << "," << fmt17(fitted_order(hs, e2)) << ","
      << fmt17(fitted_order(hs, e3)) << "," << fmt17(fitted_order(hs, e4)) << "\n";
  return out.str();
}

json verify_report(const RunConfig& cfg) {
  const Workspace ws = build_workspace(cfg);
  const GibbsState& gibbs = ws.gibbs;
  const Grid& grid = ws.grid;
  const Spectrum& spec = ws.spectrum;
  const double ts = cfg.tolerance_scale;
  const bool quadratic = cfg.potential_kind == "quadratic";
  std::vector<Check> checks;

  // ---- Gibbs state ----
  {
    Field0 ones(grid.n, 1.0);
    checks.push_back(make_check(
        "gibbs_unit_mass", "discrete Gibbs weight has unit mass",
        std::fabs(inner_G(ones, ones, gibbs) - 1.0), 1e-12 * ts));
  }
  if (quadratic) {
    const double zref = std::sqrt(2.0 * M_PI * cfg.mu / cfg.beta);
    checks.push_back(make_check("gaussian_partition_value",
                                "Z_G = sqrt(2 pi mu / beta) for the quadratic potential",
                                std::fabs(gibbs.z - zref) / zref, 1e-8 * ts));
  }
  {
    // shifting h by a constant only moves the partition value
    PotentialSpec shifted = cfg.potential();
    Field0 h = shifted.tabulate(grid);
    for (double& v : h.v) v += 10.0;
    const GibbsState g2 = gibbs_state(tabulated_potential(h.v, cfg.beta), grid);
    double diff = 0.0;
    for (int i = 0; i < grid.n; ++i) diff = std::max(diff, std::fabs(g2.rho[i] - gibbs.rho[i]));
    checks.push_back(make_check("gibbs_shift_invariance",
                                "rho_G is invariant under h -> h + const", diff, 1e-12 * ts));
  }

  // ---- discrete geometry ----
  {
    DetRng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Field0 phi(grid.n);
      Field1 alpha(grid.n - 1);
      for (auto& v : phi.v) v = rng.next();
      for (auto& v : alpha.v) v = rng.next();
      const double lhs = inner_G(codiff_G(alpha, gibbs), phi, gibbs);
      const double rhs = inner_G(alpha, d(phi, grid), gibbs);
      worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
    }
    checks.push_back(make_check("adjointness_random_pairs",
                                "<codiff_G a, f>_G equals <a, d f>_G (100 random pairs)",
                                worst, 1e-12 * ts));
  }
  {
    const Field0 zero = ws.laplacian.apply(Field0(grid.n, 1.0));
    checks.push_back(make_check("laplacian_constant_null",
                                "Delta_G annihilates constants exactly", sup_abs(zero),
                                1e-15 * ts));
  }
  {
    DetRng rng(11);
    double min_quad = 0.0, worst_sym = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Field0 a(grid.n), b(grid.n);
      for (auto& v : a.v) v = rng.next();
      for (auto& v : b.v) v = rng.next();
      const Field0 la = ws.laplacian.apply(a);
      const Field0 lb = ws.laplacian.apply(b);
      min_quad = std::min(min_quad, inner_G(la, a, gibbs));
      const double s1 = inner_G(la, b, gibbs);
      const double s2 = inner_G(a, lb, gibbs);
      worst_sym = std::max(worst_sym, std::fabs(s1 - s2) / std::max(1.0, std::fabs(s1)));
    }
    checks.push_back(make_check("laplacian_psd", "<Delta_G f, f>_G is nonnegative",
                                std::max(0.0, -min_quad), 1e-12 * ts));
    checks.push_back(make_check("laplacian_symmetry",
                                "Delta_G is symmetric in the weighted inner product",
                                worst_sym, 1e-12 * ts));
  }

  // ---- spectrum ----
  checks.push_back(make_check("lambda0_zero", "the lowest eigenvalue vanishes",
                              std::fabs(spec.eigenvalues[0]), 1e-10 * ts));
  {
    Field0 dev = spec.modes[0];
    for (double& v : dev.v) v -= 1.0;
    checks.push_back(make_check("phi0_constant", "the 0th mode is the constant function",
                                sup_abs(dev), 1e-8 * ts));
  }
  checks.push_back(make_check("orthonormality_gram",
                              "modes are orthonormal in the weighted inner product",
                              spec.gram_residual, 1e-10 * ts));
  checks.push_back(make_check(
      "eigen_residuals", "every eigenpair satisfies its equation at the solver tolerance",
      *std::max_element(spec.residuals.begin(), spec.residuals.end()),
      cfg.eigen_residual_tol * ts));
  {
    double worst = 0.0;
    for (int s = 0; s < spec.count(); ++s) {
      const Field1 ds = d(spec.modes[s], grid);
      worst = std::max(worst, std::fabs(spec.eigenvalues[s] - inner_G(ds, ds, gibbs)) /
                                  std::max(1.0, spec.eigenvalues[s]));
    }
    checks.push_back(make_check("rayleigh_identity",
                                "lambda_s = <d phi_s, d phi_s>_G for normalized modes", worst,
                                1e-8 * ts));
  }
  if (quadratic) {
    const double lref = cfg.beta / cfg.mu;
    checks.push_back(make_check("gaussian_lambda1", "lambda_1 = beta/mu",
                                std::fabs(spec.eigenvalues[1] - lref) / lref, 1e-4 * ts));
    double worst = 0.0;
    for (int s = 2; s <= std::min(5, spec.count() - 1); ++s)
      worst = std::max(worst,
                       std::fabs(spec.eigenvalues[s] / spec.eigenvalues[1] - s) / s);
    checks.push_back(make_check("gaussian_ladder",
                                "lambda_s / lambda_1 = s for the quadratic potential", worst,
                                1e-3 * ts));
    // mode value at x = 1 (linear interpolation when off-grid)
    const Field0& p1 = spec.modes[1];
    double at1;
    {
      const double xq = 1.0;
      int i = static_cast<int>(std::floor((xq - grid.x_min) / grid.dx));
      i = std::clamp(i, 0, grid.n - 2);
      const double f = (xq - grid.x[i]) / grid.dx;
      at1 = (1.0 - f) * p1[i] + f * p1[i + 1];
    }
    const double conv = std::sqrt(cfg.beta / cfg.mu);
    const double printed =
        std::pow(cfg.beta * cfg.beta * cfg.beta / (2.0 * M_PI * std::pow(cfg.mu, 3)), 0.25);
    checks.push_back(make_check(
        "phi1_normalization", "phi_1(1) follows the orthonormal convention sqrt(beta/mu)",
        std::fabs(at1 - conv), 1e-4 * ts,
        "computed phi_1(1) = " + fmt17(at1) + "; the orthonormal convention gives " +
            fmt17(conv) + "; the alternative printed normalization (beta^3/(2 pi mu^3))^{1/4} = " +
            fmt17(printed) + " deviates from the computed value by " +
            fmt17(std::fabs(at1 - printed)) +
            " and is inconsistent with <phi_1, phi_1>_G = 1"));
  }

  // ---- evolution: spectral vs Crank-Nicolson ----
  {
    const int n_band = std::min(8, cfg.modes);
    const ModeCoefficients coeffs = band_limited_profile(spec, n_band, 0.5, cfg.beta);
    const StateField phi0 = propagate(coeffs, 0.0, spec);
    Field0 ones(grid.n, 1.0);
    const double mass0 = inner_G(phi0.phi, ones, gibbs);

    const double t_end = 1.0;
    const int steps = 1000;
    const double dt = t_end / steps;
    StateField cn = phi0;
    double mass_drift = 0.0, lyap_increase = 0.0, fe_decrease = 0.0;
    double lyap_prev = lyapunov(cn, gibbs);
    double fe_prev = free_energy(cn, gibbs).free_energy;
    for (int k = 1; k <= steps; ++k) {
      cn = step_crank_nicolson(cn, dt, ws.laplacian);
      if (k % (steps / 100) == 0) {
        mass_drift = std::max(mass_drift, std::fabs(inner_G(cn.phi, ones, gibbs) - mass0));
        const double ly = lyapunov(cn, gibbs);
        lyap_increase = std::max(lyap_increase, ly - lyap_prev);
        lyap_prev = ly;
        const double fe = free_energy(cn, gibbs).free_energy;
        fe_decrease = std::max(fe_decrease, fe_prev - fe);
        fe_prev = fe;
      }
    }
    const StateField sp = propagate(coeffs, t_end, spec);
    Field0 diff = cn.phi;
    for (int i = 0; i < grid.n; ++i) diff[i] -= sp.phi[i];
    checks.push_back(make_check("cn_vs_spectral",
                                "Crank-Nicolson matches the eigenfunction-expansion solution",
                                sup_abs(diff), 1e-4 * ts));
    checks.push_back(make_check("cn_mass_conservation",
                                "total mass is conserved along the implicit evolution",
                                mass_drift, 1e-10 * ts));
    checks.push_back(make_check("lyapunov_descent",
                                "the Lyapunov functional never increases along the flow",
                                lyap_increase, 1e-12 * ts));
    checks.push_back(make_check("free_energy_ascent",
                                "the free energy never decreases along the flow", fe_decrease,
                                1e-10 * ts));

    // exponential contraction of the distance to equilibrium
    Field0 dev0 = phi0.phi;
    for (double& v : dev0.v) v -= 1.0;
    const double dist0 = norm_G(dev0, gibbs);
    double worst = 0.0;
    for (int c = 0; c <= 10; ++c) {
      const double t = t_end * c / 10.0;
      const StateField st = propagate(coeffs, t, spec);
      Field0 dev = st.phi;
      for (double& v : dev.v) v -= 1.0;
      const double bound =
          dist0 * std::exp(-spec.eigenvalues[1] * t / cfg.beta) + 1e-8 * ts;
      worst = std::max(worst, norm_G(dev, gibbs) - bound);
    }
    checks.push_back(make_check("spectral_gap_contraction",
                                "distance to equilibrium decays at the spectral-gap rate",
                                std::max(0.0, worst), 0.0));

    // semigroup property and the projection diagram
    {
      const ModeCoefficients a1 = propagate_coeffs(coeffs, 0.4, spec);
      const ModeCoefficients a2 = propagate_coeffs(a1, 0.6, spec);
      const ModeCoefficients a12 = propagate_coeffs(coeffs, 1.0, spec);
      double worst_sg = 0.0;
      for (int s = 0; s < spec.count(); ++s)
        worst_sg = std::max(worst_sg, std::fabs(a2.a[s] - a12.a[s]));
      checks.push_back(make_check("propagation_semigroup",
                                  "propagate(t1+t2) composes from propagate(t1), propagate(t2)",
                                  worst_sg, 1e-12 * ts));

      const std::vector<int> group = slow_group(spec, cfg.degeneracy_rtol);
      const ModeCoefficients pe = project_slowest(propagate_coeffs(coeffs, 0.7, spec), group);
      const ModeCoefficients ep = propagate_coeffs(project_slowest(coeffs, group), 0.7, spec);
      double worst_cd = 0.0;
      for (int s = 0; s < spec.count(); ++s)
        worst_cd = std::max(worst_cd, std::fabs(pe.a[s] - ep.a[s]));
      checks.push_back(make_check("projection_commutes_with_flow",
                                  "slow-mode projection commutes with the evolution", worst_cd,
                                  1e-12 * ts));

      // slowest mode solves Delta_G phi = lambda_1 (phi - 1)
      const StateField bar = propagate_slowest(project_slowest(coeffs, group), group, 0.3, spec);
      const Field0 lhs = ws.laplacian.apply(bar.phi);
      const double lam1 = spec.eigenvalues[group.front()];
      Field0 rhs(grid.n);
      for (int i = 0; i < grid.n; ++i) rhs[i] = lam1 * (bar.phi[i] - 1.0);
      Field0 dd = lhs;
      for (int i = 0; i < grid.n; ++i) dd[i] -= rhs[i];
      checks.push_back(make_check("slowest_mode_equation",
                                  "the projected state solves the slow relaxation equation",
                                  sup_abs(dd), 1e-6 * ts));
    }
  }

  // ---- thermodynamics ----
  if (quadratic) {
    double worst = 0.0;
    for (double qv : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const std::vector<double> q(ws.observables.count(), qv);
      const double got = psi_G(q, ws.observables, gibbs, 0).value;
      const double want = std::exp(cfg.mu * qv * qv / (2.0 * cfg.beta));
      worst = std::max(worst, std::fabs(got - want));
    }
    checks.push_back(make_check("gaussian_psi", "psi_G(q) = exp(mu q^2 / (2 beta)) with B = x",
                                worst, 1e-8 * ts));
  }
  {
    const std::vector<double> q(ws.observables.count(), 0.4);
    const PsiG p = psi_G(q, ws.observables, gibbs, 2);
    double worst = 0.0;
    const double step = 1e-5;
    for (std::size_t j = 0; j < q.size(); ++j) {
      std::vector<double> qp = q, qm = q;
      qp[j] += step;
      qm[j] -= step;
      const double fd = (psi_G(qp, ws.observables, gibbs, 0).value -
                         psi_G(qm, ws.observables, gibbs, 0).value) /
                        (2.0 * step);
      worst = std::max(worst, std::fabs(fd - p.grad[j]) / std::max(1.0, std::fabs(p.grad[j])));
    }
    checks.push_back(make_check("psi_gradient_quadrature",
                                "the quadrature gradient of psi_G matches finite differences",
                                worst, 1e-6 * ts));
    checks.push_back(make_check("psi_hessian_psd", "psi_G is convex",
                                std::max(0.0, -min_eigenvalue_sym(p.hess)), 1e-10 * ts));
  }
  {
    // expectation of an eigenmode recovers its coefficient
    const ModeCoefficients coeffs = band_limited_profile(spec, std::min(8, cfg.modes), 0.5,
                                                         cfg.beta);
    const double t = 0.35;
    const StateField st = propagate(coeffs, t, spec);
    const ModeCoefficients at = propagate_coeffs(coeffs, t, spec);
    double worst = 0.0;
    for (int s = 0; s < std::min(8, spec.count()); ++s)
      worst = std::max(worst, std::fabs(expectation(st, spec.modes[s], gibbs) - at.a[s]));
    checks.push_back(make_check("mode_expectation_identity",
                                "E_t[phi_s] equals the expansion coefficient a_t^s", worst,
                                1e-10 * ts));
  }
  if (quadratic) {
    // slowest-mode observable decay at the analytic rate and amplitude
    const std::vector<int> group = slow_group(spec, cfg.degeneracy_rtol);
    ModeCoefficients coeffs{std::vector<double>(spec.count(), 0.0), cfg.beta};
    coeffs.a[0] = 1.0;
    coeffs.a[1] = 0.2;
    Field0 xf(grid.n);
    for (int i = 0; i < grid.n; ++i) xf[i] = grid.x[i];
    const double c_read =
        coeffs.a[1] * inner_G(spec.modes[1], xf, gibbs) / inner_G(xf, xf, gibbs);
    double worst = 0.0;
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const StateField bar = propagate_slowest(coeffs, group, t, spec);
      const double got = expectation(bar, xf, gibbs);
      const double want = c_read * (cfg.mu / cfg.beta) * std::exp(-t / cfg.mu);
      worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    checks.push_back(make_check("slowest_expectation_decay",
                                "E_t[x] = c (mu/beta) exp(-t/mu) with c the x-coefficient of "
                                "the computed slow mode",
                                worst, 1e-6 * ts));
  }

  // ---- contact dynamics ----
  {
    const json eq = equivalence_report(cfg, ws);
    double worst = 0.0;
    for (const auto& row : eq["per_q"])
      worst = std::max({worst, row["max_z_discrepancy"].get<double>(),
                        row["max_p_discrepancy"].get<double>()});
    checks.push_back(make_check("contact_equivalence",
                                "slowest-mode moments follow the contact Hamiltonian flow",
                                worst, 1e-10 * ts));
  }
  {
    const std::vector<int> group = slow_group(spec, cfg.degeneracy_rtol);
    const double gamma1 = spec.eigenvalues[group.front()] / cfg.beta;
    const std::vector<double> q(ws.observables.count(), 0.5);
    const PsiG psi = psi_G(q, ws.observables, gibbs, 1);
    ThermoPoint pt0;
    pt0.q = q;
    pt0.p.assign(q.size(), 0.0);
    for (std::size_t j = 0; j < q.size(); ++j) pt0.p[j] = psi.grad[j] + 0.3;
    pt0.z = psi.value + 0.4;

    // closed-form contraction onto the Legendrian
    const double t_end = 10.0;
    const ThermoPoint end = flow_closed_form(pt0, gamma1, psi.value, psi.grad, t_end);
    auto dist = [&](const ThermoPoint& p) {
      double d2 = (p.z - psi.value) * (p.z - psi.value);
      for (std::size_t j = 0; j < q.size(); ++j)
        d2 += (p.p[j] - psi.grad[j]) * (p.p[j] - psi.grad[j]);
      return std::sqrt(d2);
    };
    const double bound = dist(pt0) * std::exp(-gamma1 * t_end) * (1.0 + 1e-6 * ts);
    checks.push_back(make_check("legendrian_convergence",
                                "the relaxation flow contracts onto the Legendrian submanifold",
                                std::max(0.0, dist(end) - bound), 0.0));

    ContactHamiltonianSpec H =
        relaxation_hamiltonian(gamma1, psi_field(ws.observables, gibbs));
    const ContactTrajectory traj = flow_rk4(H, pt0, 1e-2, 100);
    double worst_contract = 0.0;
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
      const Tangent v = vector_field(H, traj.points[i]);
      double pq = 0.0;
      for (std::size_t j = 0; j < q.size(); ++j) pq += traj.points[i].p[j] * v.qdot[j];
      worst_contract =
          std::max(worst_contract, std::fabs(v.zdot - pq - traj.hamiltonian[i]));
    }
    checks.push_back(make_check("contact_form_contract",
                                "the contact form evaluates to H along the flow",
                                worst_contract, 1e-9 * ts));

    const ThermoPoint onL{psi.grad, q, psi.value};
    const Tangent atL = vector_field(H, onL);
    double fieldL = std::fabs(atL.zdot);
    for (std::size_t j = 0; j < q.size(); ++j)
      fieldL = std::max({fieldL, std::fabs(atL.pdot[j]), std::fabs(atL.qdot[j])});
    checks.push_back(make_check("legendrian_equilibria",
                                "points of the Legendrian submanifold are fixed points",
                                fieldL, 1e-12 * ts));

    const ThermoPoint rk_end = traj.points.back();
    const ThermoPoint cf_end = flow_closed_form(pt0, gamma1, psi.value, psi.grad, 1.0);
    double rk_err = std::fabs(rk_end.z - cf_end.z);
    for (std::size_t j = 0; j < q.size(); ++j)
      rk_err = std::max(rk_err, std::fabs(rk_end.p[j] - cf_end.p[j]));
    checks.push_back(make_check("rk4_vs_closed_form",
                                "the generic integrator reproduces the closed-form flow",
                                rk_err, 1e-10 * ts));

    // gamma_1 sets the natural time-scale
    double worst_scale = 0.0;
    for (double t : {0.3, 1.7, 4.0}) {
      const ThermoPoint a = flow_closed_form(pt0, gamma1, psi.value, psi.grad, t);
      const ThermoPoint b = flow_closed_form(pt0, 1.0, psi.value, psi.grad, gamma1 * t);
      double diff = std::fabs(a.z - b.z);
      for (std::size_t j = 0; j < q.size(); ++j)
        diff = std::max(diff, std::fabs(a.p[j] - b.p[j]));
      worst_scale = std::max(worst_scale, diff);
    }
    checks.push_back(make_check("gamma1_timescale",
                                "rescaling time by gamma_1 reproduces the unit-rate flow",
                                worst_scale, 1e-12 * ts));
  }

  // ---- tilted dynamics ----
  {
    const json tr = tilted_report(cfg, ws);
    double worst_sens = 0.0, worst_field = 0.0, worst_neg = 0.0, worst_lam = 0.0;
    for (const auto& row : tr["per_q"]) {
      for (double s : row["sensitivity"].get<std::vector<double>>())
        worst_sens = std::max(worst_sens, std::fabs(s));
      worst_field = std::max(worst_field, row["field_difference_max"].get<double>());
      for (double l : row["eigenvalues"].get<std::vector<double>>())
        worst_neg = std::max(worst_neg, -l);
      if (row.contains("relative_error_vs_beta_over_mu"))
        worst_lam = std::max(worst_lam, row["relative_error_vs_beta_over_mu"].get<double>());
    }
    if (quadratic) {
      // the gap of the shifted quadratic well is field-independent;
      // for general potentials it genuinely moves with q
      checks.push_back(make_check("tilted_lambda1",
                                  "the tilted spectral gap stays at beta/mu", worst_lam,
                                  1e-3 * ts));
      checks.push_back(make_check("tilted_sensitivity",
                                  "the tilted gap is insensitive to the applied field",
                                  worst_sens, 1e-3 * ts));
      checks.push_back(make_check("tilted_field_matches_relaxation",
                                  "the tilted contact field degenerates to the relaxation field",
                                  worst_field, 1e-3 * ts));
    }
    checks.push_back(make_check("tilted_eigenvalues_nonnegative",
                                "tilted eigenvalues are nonnegative", worst_neg, 1e-10 * ts));

    // generic: Legendrian points are fixed under the tilted flow too
    double worst_fix = 0.0;
    for (const auto& row : tr["per_q"]) {
      const double qv = row["q"].get<double>();
      const std::vector<double> q(ws.observables.count(), qv);
      const PsiG psi = psi_G(q, ws.observables, gibbs, 1);
      const ThermoPoint onL{psi.grad, q, psi.value};
      const Tangent t =
          tilted_contact_tangent(cfg.beta, row["lambda1_tilted"].get<double>(),
                                 row["sensitivity"].get<std::vector<double>>(), psi.value,
                                 psi.grad, onL);
      worst_fix = std::max(worst_fix, std::fabs(t.zdot));
      for (double v : t.pdot) worst_fix = std::max(worst_fix, std::fabs(v));
    }
    checks.push_back(make_check("tilted_fixed_on_legendrian",
                                "the tilted field vanishes on the Legendrian submanifold",
                                worst_fix, 1e-12 * ts));
  }

  // ---- operator identities ----
  {
    const IdentityResiduals ids = identity_residuals(gibbs, ws.laplacian, 0);
    const double c_rel = 100.0;
    const double tol = c_rel * grid.dx * grid.dx * ts;
    checks.push_back(make_check("identity_weighted_vs_drift_form",
                                "Delta_G phi = beta L_{beta,h} phi", ids.lap_vs_L, tol));
    checks.push_back(make_check("identity_ground_state_rhs",
                                "the drift form reproduces -Delta_G/beta", ids.li_vs_lap, tol));
    checks.push_back(make_check("identity_density_vs_state",
                                "fp_rhs(rho_G phi) = -rho_G Delta_G phi / beta", ids.fp_vs_lap,
                                tol));
    checks.push_back(make_check("identity_dd_expansion",
                                "D+D matches its expanded form", ids.dd_direct_vs_expanded,
                                tol));

    const Field0 fp0 = fp_rhs(gibbs.rho, gibbs);
    checks.push_back(make_check("fp_stationarity", "the Gibbs density is stationary",
                                sup_abs(fp0), 1e-12 * ts));

    const Field0 phi = probe_field(grid, 1);
    Field0 rho_phi(grid.n);
    for (int i = 0; i < grid.n; ++i) rho_phi[i] = gibbs.rho[i] * phi[i];
    const Field0 fp = fp_rhs(rho_phi, gibbs);
    double mass = 0.0;
    for (int i = 0; i < grid.n; ++i) mass += grid.w[i] * fp[i];
    checks.push_back(make_check("fp_mass_telescope",
                                "the conservative flux form conserves total mass",
                                std::fabs(mass), 1e-12 * ts));

    // Witten adjointness and the sign-difference identity
    DetRng rng(23);
    Field0 f(grid.n);
    Field1 alpha(grid.n - 1);
    for (auto& v : f.v) v = rng.next();
    for (auto& v : alpha.v) v = rng.next();
    const double lhs = inner_G(witten_d(f, gibbs), alpha, gibbs);
    const double rhs = inner_G(f, codiff_unweighted(alpha, grid), gibbs);
    checks.push_back(make_check("witten_adjointness",
                                "the Witten derivative is adjoint to the plain codifferential",
                                std::fabs(lhs - rhs), 1e-8 * ts));

    const Field0 rho_test = rho_phi;
    const Field0 fp_t = fp_rhs(rho_test, gibbs);
    const Field0 dw = witten_variants(rho_test, gibbs, OperatorVariant::delta_W).primary;
    const Field1 rb = edge_average(rho_test, grid);
    Field1 flux(grid.n - 1);
    for (int e = 0; e < grid.n - 1; ++e) flux[e] = rb[e] * gibbs.edge_drift[e];
    Field0 drift_div = codiff_unweighted(flux, grid);
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i)
      worst = std::max(worst,
                       std::fabs(fp_t[i] + dw[i] / cfg.beta - (-2.0 * drift_div[i])));
    checks.push_back(make_check("witten_sign_difference",
                                "fp_rhs + delta_W/beta collapses to twice the drift divergence",
                                worst, 1e-12 * ts));

    const Field0 p1 = probe_field(grid, 0);
    const Field0 p2 = probe_field(grid, 2);
    const double s1 = inner_G(L_beta_h(p1, gibbs), p2, gibbs);
    const double s2 = inner_G(p1, L_beta_h(p2, gibbs), gibbs);
    checks.push_back(make_check("drift_form_symmetry",
                                "L_{beta,h} is symmetric in the weighted inner product",
                                std::fabs(s1 - s2) / std::max(1.0, std::fabs(s1)), 1e-8 * ts));

    // identity residuals contract at second order under grid doubling
    std::vector<double> hs;
    std::vector<std::vector<double>> seq(4);
    for (int nn : {251, 501, 1001, 2001}) {
      RunConfig c2 = cfg;
      c2.n = nn;
      const Grid g2 = c2.grid();
      const GibbsState gb = gibbs_state(c2.potential(), g2);
      const IdentityResiduals r = identity_residuals(gb, laplacian_G(gb), 0);
      hs.push_back(g2.dx);
      seq[0].push_back(r.lap_vs_L);
      seq[1].push_back(r.li_vs_lap);
      seq[2].push_back(r.fp_vs_lap);
      seq[3].push_back(r.dd_direct_vs_expanded);
    }
    double worst_dev = 0.0;
    std::string orders;
    for (int j = 0; j < 4; ++j) {
      const double order = fitted_order(hs, seq[j]);
      worst_dev = std::max(worst_dev, std::fabs(order - 2.0));
      orders += (j ? ", " : "") + fmt17(order);
    }
    checks.push_back(make_check("identity_convergence_orders",
                                "operator identity residuals converge at second order",
                                worst_dev, 0.2 * ts, "fitted orders: " + orders));
  }

  // ---- alternative z choices ----
  {
    const std::vector<int> group = slow_group(spec, cfg.degeneracy_rtol);
    ModeCoefficients coeffs{std::vector<double>(spec.count(), 0.0), cfg.beta};
    coeffs.a[0] = 1.0;
    const double sup1 = sup_abs(spec.modes[group.front()]);
    coeffs.a[group.front()] = 0.5 / std::max(1.0, sup1);
    const std::vector<double> tg{1.0, 2.0, 4.0, 10.0};
    const AltZReport rep = alt_z_flows(gibbs, spec, coeffs, tg, cfg.degeneracy_rtol);
    checks.push_back(make_check("alt_z_energy_closed",
                                "the internal-energy choice of z closes and matches quadrature",
                                rep.max_energy_deviation, 1e-8 * ts));
    bool decreasing = true;
    for (std::size_t i = 1; i + 1 < rep.log_residual.size(); ++i)
      decreasing = decreasing &&
                   (std::fabs(rep.log_residual[i]) < std::fabs(rep.log_residual[i - 1]));
    const double final_res = std::fabs(rep.log_residual.back());
    checks.push_back(make_check("alt_z_free_energy_residual",
                                "the free-energy choice of z has a decaying closure defect",
                                decreasing ? final_res : 1.0, 1e-6 * ts));
  }

  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  json j{{"pass", all},
         {"tolerance_scale", ts},
         {"checks", to_json(checks)},
         {"config", {{"beta", cfg.beta},
                     {"potential_kind", cfg.potential_kind},
                     {"n", cfg.n},
                     {"domain", {cfg.resolved_min(), cfg.resolved_max()}},
                     {"modes", cfg.modes}}}};
  return j;
}

int run(const std::string& command, const RunConfig& cfg) {
  const std::string dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
  auto path = [&dir](const std::string& name) { return dir + "/" + name; };

  if (command == "spectrum") {
    const Workspace ws = build_workspace(cfg);
    write_file(path("spectrum.csv"), spectrum_csv(cfg, ws));
    std::cout << "spectrum: " << ws.spectrum.count() << " modes, lambda_1 = "
              << fmt17(ws.spectrum.eigenvalues[1]) << " -> " << path("spectrum.csv") << "\n";
    return 0;
  }
  if (command == "evolve") {
    const Workspace ws = build_workspace(cfg);
    write_file(path("trajectory.csv"), trajectory_csv(cfg, ws));
    std::cout << "evolve: t_final = " << cfg.t_final << " -> " << path("trajectory.csv")
              << "\n";
    return 0;
  }
  if (command == "contact") {
    const Workspace ws = build_workspace(cfg);
    write_file(path("contact.csv"), contact_csv(cfg, ws));
    write_file(path("psi.csv"), psi_csv(cfg, ws));
    const json eq = equivalence_report(cfg, ws);
    write_file(path("equivalence.json"), eq.dump(2) + "\n");
    std::cout << "contact: pass = " << (eq["pass"].get<bool>() ? "true" : "false") << " -> "
              << path("contact.csv") << ", " << path("psi.csv") << ", "
              << path("equivalence.json") << "\n";
    return eq["pass"].get<bool>() ? 0 : 1;
  }
  if (command == "tilted") {
    const Workspace ws = build_workspace(cfg);
    const json tr = tilted_report(cfg, ws);
    write_file(path("tilted.json"), tr.dump(2) + "\n");
    std::cout << "tilted: " << tr["per_q"].size() << " field points -> " << path("tilted.json")
              << "\n";
    return 0;
  }
  if (command == "verify") {
    const json rep = verify_report(cfg);
    write_file(path("verify.json"), rep.dump(2) + "\n");
    int passed = 0, total = 0;
    for (const auto& c : rep["checks"]) {
      ++total;
      if (c["pass"].get<bool>()) ++passed;
      else log::warn("verify: FAIL " + c["name"].get<std::string>() + " residual " +
                     fmt17(c["residual"].get<double>()));
    }
    std::cout << "verify: " << passed << "/" << total << " checks pass -> "
              << path("verify.json") << "\n";
    return rep["pass"].get<bool>() ? 0 : 1;
  }
  if (command == "convergence") {
    write_file(path("convergence.csv"), convergence_csv(cfg));
    std::cout << "convergence -> " << path("convergence.csv") << "\n";
    return 0;
  }
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace gfc::commands
