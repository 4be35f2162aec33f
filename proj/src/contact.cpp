#include "gfc/contact.hpp"

#include <cmath>

namespace gfc {

namespace {

constexpr double kFdStep = 1e-6;

double fd_step(double coord) { return kFdStep * (1.0 + std::fabs(coord)); }

void check_finite(const Tangent& t) {
  for (double v : t.qdot)
    if (!std::isfinite(v)) throw ContactError("vector field has non-finite q component");
  for (double v : t.pdot)
    if (!std::isfinite(v)) throw ContactError("vector field has non-finite p component");
  if (!std::isfinite(t.zdot)) throw ContactError("vector field has non-finite z component");
}

}  // namespace

double ContactHamiltonianSpec::evaluate(const ThermoPoint& pt) const {
  switch (form) {
    case Form::relaxation:
      return gamma1 * (psi.value(pt.q) - pt.z);
    case Form::tilted:
      return lambda1.value(pt.q) / beta * (psi.value(pt.q) - pt.z);
    case Form::general:
      return general(pt);
  }
  return 0.0;
}

ContactHamiltonianSpec relaxation_hamiltonian(double gamma1, ScalarFieldQ psi) {
  if (!(gamma1 > 0.0)) throw ContactError("relaxation rate gamma1 must be positive");
  ContactHamiltonianSpec h;
  h.form = ContactHamiltonianSpec::Form::relaxation;
  h.gamma1 = gamma1;
  h.psi = std::move(psi);
  return h;
}

ContactHamiltonianSpec tilted_hamiltonian(double beta, ScalarFieldQ lambda1, ScalarFieldQ psi) {
  ContactHamiltonianSpec h;
  h.form = ContactHamiltonianSpec::Form::tilted;
  h.beta = beta;
  h.lambda1 = std::move(lambda1);
  h.psi = std::move(psi);
  return h;
}

ContactHamiltonianSpec general_hamiltonian(std::function<double(const ThermoPoint&)> f) {
  ContactHamiltonianSpec h;
  h.form = ContactHamiltonianSpec::Form::general;
  h.general = std::move(f);
  return h;
}

Tangent vector_field(const ContactHamiltonianSpec& H, const ThermoPoint& pt) {
  const std::size_t n = pt.q.size();
  Tangent out;
  out.qdot.assign(n, 0.0);
  out.pdot.assign(n, 0.0);

  switch (H.form) {
    case ContactHamiltonianSpec::Form::relaxation: {
      const double psi = H.psi.value(pt.q);
      const std::vector<double> dpsi = H.psi.grad(pt.q);
      for (std::size_t j = 0; j < n; ++j) out.pdot[j] = H.gamma1 * (dpsi[j] - pt.p[j]);
      out.zdot = H.gamma1 * (psi - pt.z);
      break;
    }
    case ContactHamiltonianSpec::Form::tilted: {
      const double lt1 = H.lambda1.value(pt.q);
      if (!(lt1 > 0.0)) throw ContactError("tilted form requires lambda1 > 0");
      out = tilted_contact_tangent(H.beta, lt1, H.lambda1.grad(pt.q), H.psi.value(pt.q),
                                   H.psi.grad(pt.q), pt);
      break;
    }
    case ContactHamiltonianSpec::Form::general: {
      auto at = [&](const ThermoPoint& p) { return H.general(p); };
      ThermoPoint w = pt;
      std::vector<double> dHdp(n), dHdq(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double hp = fd_step(pt.p[j]);
        w.p[j] = pt.p[j] + hp;
        const double fp = at(w);
        w.p[j] = pt.p[j] - hp;
        dHdp[j] = (fp - at(w)) / (2.0 * hp);
        w.p[j] = pt.p[j];

        const double hq = fd_step(pt.q[j]);
        w.q[j] = pt.q[j] + hq;
        const double fq = at(w);
        w.q[j] = pt.q[j] - hq;
        dHdq[j] = (fq - at(w)) / (2.0 * hq);
        w.q[j] = pt.q[j];
      }
      const double hz = fd_step(pt.z);
      w.z = pt.z + hz;
      const double fz = at(w);
      w.z = pt.z - hz;
      const double dHdz = (fz - at(w)) / (2.0 * hz);
      w.z = pt.z;

      const double h0 = at(pt);
      double pdp = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        out.qdot[j] = -dHdp[j];
        out.pdot[j] = dHdq[j] + pt.p[j] * dHdz;
        pdp += pt.p[j] * dHdp[j];
      }
      out.zdot = h0 - pdp;
      break;
    }
  }
  check_finite(out);
  return out;
}

ThermoPoint flow_closed_form(const ThermoPoint& pt0, double gamma1, double psi,
                             const std::vector<double>& dpsi, double t) {
  const double decay = std::exp(-gamma1 * t);
  ThermoPoint out = pt0;
  for (std::size_t j = 0; j < pt0.p.size(); ++j)
    out.p[j] = dpsi[j] + (pt0.p[j] - dpsi[j]) * decay;
  out.z = psi + (pt0.z - psi) * decay;
  return out;
}

ContactTrajectory flow_rk4(const ContactHamiltonianSpec& H, const ThermoPoint& pt0, double dt,
                           int steps) {
  if (!(dt > 0.0)) throw ContactError("flow_rk4: dt must be positive");
  const std::size_t n = pt0.q.size();

  auto axpy = [n](const ThermoPoint& base, double c, const Tangent& t) {
    ThermoPoint out = base;
    for (std::size_t j = 0; j < n; ++j) {
      out.q[j] += c * t.qdot[j];
      out.p[j] += c * t.pdot[j];
    }
    out.z += c * t.zdot;
    return out;
  };

  ContactTrajectory traj;
  traj.t.reserve(steps + 1);
  traj.points.reserve(steps + 1);
  traj.hamiltonian.reserve(steps + 1);
  ThermoPoint pt = pt0;
  traj.t.push_back(0.0);
  traj.points.push_back(pt);
  traj.hamiltonian.push_back(H.evaluate(pt));
  for (int s = 0; s < steps; ++s) {
    const Tangent k1 = vector_field(H, pt);
    const Tangent k2 = vector_field(H, axpy(pt, 0.5 * dt, k1));
    const Tangent k3 = vector_field(H, axpy(pt, 0.5 * dt, k2));
    const Tangent k4 = vector_field(H, axpy(pt, dt, k3));
    for (std::size_t j = 0; j < n; ++j) {
      pt.q[j] += dt / 6.0 * (k1.qdot[j] + 2.0 * k2.qdot[j] + 2.0 * k3.qdot[j] + k4.qdot[j]);
      pt.p[j] += dt / 6.0 * (k1.pdot[j] + 2.0 * k2.pdot[j] + 2.0 * k3.pdot[j] + k4.pdot[j]);
    }
    pt.z += dt / 6.0 * (k1.zdot + 2.0 * k2.zdot + 2.0 * k3.zdot + k4.zdot);
    traj.t.push_back(dt * (s + 1));
    traj.points.push_back(pt);
    traj.hamiltonian.push_back(H.evaluate(pt));
  }
  return traj;
}

Tangent tilted_contact_tangent(double beta, double lt1, const std::vector<double>& dlt1,
                               double psi, const std::vector<double>& dpsi,
                               const ThermoPoint& pt) {
  const std::size_t n = pt.q.size();
  Tangent out;
  out.qdot.assign(n, 0.0);
  out.pdot.assign(n, 0.0);
  const double rate = lt1 / beta;
  for (std::size_t j = 0; j < n; ++j)
    out.pdot[j] = rate * (dpsi[j] - pt.p[j]) + dlt1[j] / beta * (psi - pt.z);
  out.zdot = rate * (psi - pt.z);
  return out;
}

EquivalenceReport equivalence_check(const GibbsState& gibbs, const ObservableSet& observables,
                                    const std::vector<double>& q, const StateField& phi0,
                                    const std::vector<double>& t_grid, const Spectrum& spec,
                                    double degeneracy_rtol) {
  const std::vector<int> group = slow_group(spec, degeneracy_rtol);
  const ModeCoefficients coeffs =
      project_slowest(expand(phi0, spec, gibbs, nullptr), group);

  EquivalenceReport rep;
  rep.q = q;
  rep.gamma1 = spec.eigenvalues[group.front()] / gibbs.beta;
  const PsiG psi = psi_G(q, observables, gibbs, 1);
  rep.psi = psi.value;
  rep.dpsi = psi.grad;
  rep.t = t_grid;

  const StateField bar0 = propagate_slowest(coeffs, group, 0.0, spec);
  const Moments m0 = moment_observables(bar0, q, observables, gibbs);
  ThermoPoint pt0;
  pt0.q = q;
  pt0.p = m0.p;
  pt0.z = m0.z;

  {
    double d2 = (pt0.z - psi.value) * (pt0.z - psi.value);
    for (std::size_t j = 0; j < q.size(); ++j)
      d2 += (pt0.p[j] - psi.grad[j]) * (pt0.p[j] - psi.grad[j]);
    rep.legendrian_distance_initial = std::sqrt(d2);
  }

  for (double t : t_grid) {
    const StateField bar = propagate_slowest(coeffs, group, t, spec);
    const Moments m = moment_observables(bar, q, observables, gibbs);
    const ThermoPoint ct = flow_closed_form(pt0, rep.gamma1, psi.value, psi.grad, t);
    rep.z_flow.push_back(m.z);
    rep.z_contact.push_back(ct.z);
    rep.p_flow.push_back(m.p);
    rep.p_contact.push_back(ct.p);
    rep.max_z_discrepancy = std::max(rep.max_z_discrepancy, std::fabs(m.z - ct.z));
    for (std::size_t j = 0; j < q.size(); ++j)
      rep.max_p_discrepancy = std::max(rep.max_p_discrepancy, std::fabs(m.p[j] - ct.p[j]));
  }

  {
    const double tl = t_grid.back();
    const StateField bar = propagate_slowest(coeffs, group, tl, spec);
    const Moments m = moment_observables(bar, q, observables, gibbs);
    double d2 = (m.z - psi.value) * (m.z - psi.value);
    for (std::size_t j = 0; j < q.size(); ++j)
      d2 += (m.p[j] - psi.grad[j]) * (m.p[j] - psi.grad[j]);
    rep.legendrian_distance_final = std::sqrt(d2);
  }
  return rep;
}

AltZReport alt_z_flows(const GibbsState& gibbs, const Spectrum& spec,
                       const ModeCoefficients& coeffs0, const std::vector<double>& t_grid,
                       double degeneracy_rtol) {
  const std::vector<int> group = slow_group(spec, degeneracy_rtol);
  const ModeCoefficients coeffs = project_slowest(coeffs0, group);
  AltZReport rep;
  rep.t = t_grid;

  const double beta = gibbs.beta;
  const double gamma1 = spec.eigenvalues[group.front()] / beta;
  Field0 ones(gibbs.n(), 1.0);
  rep.energy_equilibrium = inner_G(ones, gibbs.h, gibbs);

  const StateField bar0 = propagate_slowest(coeffs, group, 0.0, spec);
  double z = inner_G(bar0.phi, gibbs.h, gibbs);

  // fixed-step RK4 for dz/dt = -gamma1 (z - z_inf), resampled on the
  // requested grid
  double t_now = 0.0;
  auto rhs = [&](double zz) { return -gamma1 * (zz - rep.energy_equilibrium); };
  const double dt = 1e-3;
  for (double t : t_grid) {
    while (t_now + dt <= t + 1e-15) {
      const double k1 = rhs(z);
      const double k2 = rhs(z + 0.5 * dt * k1);
      const double k3 = rhs(z + 0.5 * dt * k2);
      const double k4 = rhs(z + dt * k3);
      z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t_now += dt;
    }
    const double rem = t - t_now;
    double zt = z;
    if (rem > 1e-15) {
      const double k1 = rhs(zt);
      const double k2 = rhs(zt + 0.5 * rem * k1);
      const double k3 = rhs(zt + 0.5 * rem * k2);
      const double k4 = rhs(zt + rem * k3);
      zt += rem / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const StateField bar = propagate_slowest(coeffs, group, t, spec);
    const double zq = inner_G(bar.phi, gibbs.h, gibbs);
    rep.energy_ode.push_back(zt);
    rep.energy_quadrature.push_back(zq);
    rep.max_energy_deviation = std::max(rep.max_energy_deviation, std::fabs(zt - zq));

    Field0 lnphi(gibbs.n());
    for (int i = 0; i < gibbs.n(); ++i) {
      if (!(bar.phi[i] > 0.0))
        throw ContactError("alt_z_flows: nonpositive slowest-mode value at node " +
                           std::to_string(i) + " (x = " + std::to_string(gibbs.grid.x[i]) +
                           ")");
      lnphi[i] = std::log(bar.phi[i]);
    }
    rep.log_residual.push_back(inner_G(ones, lnphi, gibbs) / beta);
  }
  return rep;
}

}  // namespace gfc
