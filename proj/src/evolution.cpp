#include "gfc/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "gfc/log.hpp"

namespace gfc {

ModeCoefficients expand(const StateField& phi0, const Spectrum& spec, const GibbsState& gibbs,
                        double* reconstruction_residual) {
  ModeCoefficients out;
  out.beta = gibbs.beta;
  out.a.resize(spec.count());
  for (int s = 0; s < spec.count(); ++s) out.a[s] = inner_G(phi0.phi, spec.modes[s], gibbs);
  if (reconstruction_residual) {
    Field0 rec(gibbs.n(), 0.0);
    for (int s = 0; s < spec.count(); ++s)
      for (int i = 0; i < gibbs.n(); ++i) rec[i] += out.a[s] * spec.modes[s][i];
    for (int i = 0; i < gibbs.n(); ++i) rec[i] -= phi0.phi[i];
    *reconstruction_residual = norm_G(rec, gibbs);
  }
  return out;
}

ModeCoefficients propagate_coeffs(const ModeCoefficients& coeffs, double t,
                                  const Spectrum& spec) {
  if (coeffs.count() > spec.count())
    throw std::invalid_argument("propagate: more coefficients than modes");
  if (t < 0.0) log::warn("propagating with t < 0 amplifies modes");
  ModeCoefficients out = coeffs;
  for (int s = 0; s < coeffs.count(); ++s)
    out.a[s] = coeffs.a[s] * std::exp(-spec.eigenvalues[s] * t / coeffs.beta);
  return out;
}

StateField propagate(const ModeCoefficients& coeffs, double t, const Spectrum& spec) {
  const ModeCoefficients at = propagate_coeffs(coeffs, t, spec);
  const int n = static_cast<int>(spec.modes.front().size());
  StateField out;
  out.time = t;
  out.phi = Field0(n, 0.0);
  for (int s = 0; s < at.count(); ++s)
    for (int i = 0; i < n; ++i) out.phi[i] += at.a[s] * spec.modes[s][i];
  return out;
}

ModeCoefficients project_slowest(const ModeCoefficients& coeffs, const std::vector<int>& group) {
  if (group.empty()) throw std::invalid_argument("project_slowest: empty group");
  ModeCoefficients out = coeffs;
  for (int s = 1; s < out.count(); ++s) {
    bool keep = false;
    for (int g : group) keep = keep || (g == s);
    if (!keep) out.a[s] = 0.0;
  }
  return out;
}

StateField propagate_slowest(const ModeCoefficients& coeffs, const std::vector<int>& group,
                             double t, const Spectrum& spec) {
  if (group.empty()) throw std::invalid_argument("propagate_slowest: empty group");
  const int n = static_cast<int>(spec.modes.front().size());
  const double lam1 = spec.eigenvalues[group.front()];
  const double decay = std::exp(-lam1 * t / coeffs.beta);
  StateField out;
  out.time = t;
  out.phi = Field0(n, 1.0);
  for (int s : group)
    for (int i = 0; i < n; ++i) out.phi[i] += decay * coeffs.a[s] * spec.modes[s][i];
  return out;
}

StateField step_crank_nicolson(const StateField& phi, double dt, const WeightedLaplacian& lap) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_crank_nicolson: dt must be positive");
  const double c = dt / (2.0 * lap.beta);
  Field0 rhs = lap.apply(phi.phi);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = phi.phi[i] - c * rhs[i];
  StateField out;
  out.time = phi.time + dt;
  out.phi = lap.solve_shifted(rhs, c);
  return out;
}

double lyapunov(const StateField& phi, const GibbsState& gibbs) {
  Field1 g = d(phi.phi, gibbs.grid);
  return 0.5 * gibbs.beta * inner_G(g, g, gibbs);
}

MassNormalized density(const StateField& phi, const GibbsState& gibbs) {
  const int n = gibbs.n();
  Field0 rho(n);
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    rho[i] = gibbs.rho[i] * phi.phi[i];
    mass += gibbs.grid.w[i] * rho[i];
  }
  if (!(mass > 0.0)) throw ModelError("density: nonpositive total mass");
  for (int i = 0; i < n; ++i) rho[i] /= mass;
  return {std::move(rho), mass};
}

MassNormalized ground_state_transform(const Field0& rho, const GibbsState& gibbs) {
  const int n = gibbs.n();
  if (static_cast<int>(rho.size()) != n)
    throw std::invalid_argument("ground_state_transform: size mismatch");
  Field0 phi(n);
  for (int i = 0; i < n; ++i) {
    if (!(rho[i] > 0.0))
      throw ModelError("ground_state_transform: nonpositive density at node " +
                       std::to_string(i));
    phi[i] = rho[i] / gibbs.rho[i];
  }
  double mass = 0.0;
  for (int i = 0; i < n; ++i) mass += gibbs.grid.w[i] * gibbs.rho[i] * phi[i];
  for (int i = 0; i < n; ++i) phi[i] /= mass;
  return {std::move(phi), mass};
}

FreeEnergyParts free_energy(const StateField& phi, const GibbsState& gibbs) {
  const int n = gibbs.n();
  double entropy = 0.0, energy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double rho = gibbs.rho[i] * phi.phi[i];
    if (std::fabs(rho) < 1e-300) continue;  // x ln x -> 0 limit
    if (rho < 0.0)
      throw ModelError("free_energy: negative density at node " + std::to_string(i));
    entropy -= gibbs.grid.w[i] * rho * std::log(rho);
    energy += gibbs.grid.w[i] * gibbs.h[i] * rho;
  }
  return {entropy / gibbs.beta - energy, entropy, energy};
}

ModeCoefficients band_limited_profile(const Spectrum& spec, int n_modes, double amplitude,
                                      double beta) {
  if (n_modes < 1 || n_modes > spec.count())
    throw std::invalid_argument("band_limited_profile: mode count out of range");
  ModeCoefficients out;
  out.beta = beta;
  out.a.assign(spec.count(), 0.0);
  out.a[0] = 1.0;
  double w = amplitude;
  for (int s = 1; s < n_modes; ++s) {
    w *= 0.5;
    double sup = 0.0;
    for (double v : spec.modes[s].v) sup = std::max(sup, std::fabs(v));
    out.a[s] = ((s % 2 == 1) ? w : -w) / std::max(1.0, sup);
  }
  return out;
}

TrajectorySample sample_state(const StateField& phi, const GibbsState& gibbs) {
  TrajectorySample s;
  s.t = phi.time;
  Field0 ones(gibbs.n(), 1.0);
  s.mass = inner_G(phi.phi, ones, gibbs);
  s.lyapunov = lyapunov(phi, gibbs);
  const FreeEnergyParts f = free_energy(phi, gibbs);
  s.free_energy = f.free_energy;
  s.entropy = f.entropy;
  s.energy = f.energy;
  return s;
}

}  // namespace gfc
