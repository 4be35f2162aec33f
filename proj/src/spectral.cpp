#include "gfc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "gfc/log.hpp"
#include "gfc/tridiag.hpp"

namespace gfc {

namespace {

double inner_mass(const std::vector<double>& mass, const Field0& a, const Field0& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) s += mass[i] * a[i] * b[i];
  return s;
}

void fix_sign(Field0& phi) {
  double mx = 0.0;
  for (double x : phi.v) mx = std::max(mx, std::fabs(x));
  if (mx == 0.0) return;
  int pick = 0;
  for (int i = 0; i < static_cast<int>(phi.size()); ++i)
    if (std::fabs(phi[i]) >= (1.0 - 1e-8) * mx) pick = i;
  if (phi[pick] < 0.0)
    for (double& x : phi.v) x = -x;
}

}  // namespace

Spectrum eigendecompose(const WeightedLaplacian& lap, int k, double tol) {
  const int n = lap.n();
  if (k < 1 || k > n) throw SpectralError("eigendecompose: k out of range");
  if (!(tol > 0.0)) throw SpectralError("eigendecompose: tol must be positive");

  std::vector<double> sdiag, soff;
  lap.symmetrized(sdiag, soff);
  TridiagEigen eig = tridiag_smallest(sdiag, soff, k);

  std::vector<double> sqrtm(n);
  for (int i = 0; i < n; ++i) sqrtm[i] = std::sqrt(lap.mass[i]);

  Spectrum spec;
  spec.eigenvalues = eig.values;
  spec.modes.reserve(k);
  for (int s = 0; s < k; ++s) {
    Field0 phi(n);
    for (int i = 0; i < n; ++i) phi[i] = eig.vectors[s][i] / sqrtm[i];
    spec.modes.push_back(std::move(phi));
  }

  // One modified Gram-Schmidt pass in <.,.>_G; coefficients are
  // round-off sized for separated eigenvalues and pick an orthonormal
  // basis inside degenerate clusters.
  for (int s = 0; s < k; ++s) {
    Field0& phi = spec.modes[s];
    for (int r = 0; r < s; ++r) {
      const double c = inner_mass(lap.mass, phi, spec.modes[r]);
      for (int i = 0; i < n; ++i) phi[i] -= c * spec.modes[r][i];
    }
    const double nrm = std::sqrt(inner_mass(lap.mass, phi, phi));
    if (!(nrm > 0.0)) throw SpectralError("eigendecompose: degenerate basis collapse");
    for (int i = 0; i < n; ++i) phi[i] /= nrm;
    fix_sign(phi);
  }

  // residuals against the polished Rayleigh quotients
  spec.residuals.resize(k);
  for (int s = 0; s < k; ++s) {
    Field0 r = lap.apply(spec.modes[s]);
    const double lam = spec.eigenvalues[s];
    for (int i = 0; i < n; ++i) r[i] -= lam * spec.modes[s][i];
    spec.residuals[s] = std::sqrt(inner_mass(lap.mass, r, r));
    if (!(spec.residuals[s] <= tol))
      throw SpectralError("eigendecompose: residual " + std::to_string(spec.residuals[s]) +
                          " above tolerance for mode " + std::to_string(s));
  }

  double gram = 0.0;
  for (int s = 0; s < k; ++s)
    for (int r = 0; r <= s; ++r) {
      const double g = inner_mass(lap.mass, spec.modes[s], spec.modes[r]);
      gram = std::max(gram, std::fabs(g - (r == s ? 1.0 : 0.0)));
    }
  spec.gram_residual = gram;

  // degeneracy grouping at relative tolerance 1e-8
  const double grtol = 1e-8;
  for (int s = 0; s < k; ++s) {
    if (!spec.degeneracy_groups.empty()) {
      auto& g = spec.degeneracy_groups.back();
      const double ref = spec.eigenvalues[g.front()];
      if (std::fabs(spec.eigenvalues[s] - ref) <= grtol * std::max(std::fabs(ref), 1e-14)) {
        g.push_back(s);
        continue;
      }
    }
    spec.degeneracy_groups.push_back({s});
  }
  return spec;
}

std::vector<int> slow_group(const Spectrum& spec, double rel_tol) {
  if (spec.count() < 2) throw SpectralError("slow_group: need at least 2 modes");
  const double floor_ = 1e-14;
  const double lam1 = spec.eigenvalues[1];
  const double window = rel_tol * std::max(lam1, floor_);
  if (lam1 - spec.eigenvalues[0] <= std::max(window, floor_))
    throw SpectralError("slow_group: spectral gap indistinguishable from zero");
  std::vector<int> group;
  for (int s = 1; s < spec.count(); ++s)
    if (std::fabs(spec.eigenvalues[s] - lam1) <= window) group.push_back(s);
  return group;
}

std::vector<double> lambda1_sensitivity(const PotentialSpec& potential,
                                        const ObservableSet& observables,
                                        const std::vector<double>& q, double h_step,
                                        const Grid& grid, double degeneracy_rtol) {
  if (!(h_step > 0.0)) throw SpectralError("lambda1_sensitivity: h_step must be positive");
  auto lambda1_at = [&](const std::vector<double>& qq) {
    GibbsState g = gibbs_state(tilt(potential, qq, observables, grid), grid);
    Spectrum s = eigendecompose(laplacian_G(g), 3, 1e-6);
    const double gap = s.eigenvalues[2] - s.eigenvalues[1];
    if (gap <= degeneracy_rtol * std::max(s.eigenvalues[1], 1e-14))
      throw SpectralError("lambda1_sensitivity: degenerate tilted lambda_1 at stencil point");
    return s.eigenvalues[1];
  };
  std::vector<double> out(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    std::vector<double> qp = q, qm = q;
    qp[j] += h_step;
    qm[j] -= h_step;
    out[j] = (lambda1_at(qp) - lambda1_at(qm)) / (2.0 * h_step);
  }
  return out;
}

}  // namespace gfc
