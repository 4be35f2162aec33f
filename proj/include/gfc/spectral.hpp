#ifndef GFC_SPECTRAL_HPP
#define GFC_SPECTRAL_HPP

#include <vector>

#include "gfc/model.hpp"
#include "gfc/operators.hpp"

namespace gfc {

struct SpectralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Eigenpairs of Delta_G, ascending, G-orthonormal, sign-fixed.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<Field0> modes;
  std::vector<double> residuals;   // ||Delta_G phi - lambda phi||_G per mode
  double gram_residual = 0.0;      // max |<phi_s,phi_s'>_G - delta_ss'|
  std::vector<std::vector<int>> degeneracy_groups;

  int count() const { return static_cast<int>(eigenvalues.size()); }
};

/// Solves Delta_G phi = lambda phi for the k smallest pairs via the
/// similarity transform S = D^{1/2} A D^{-1/2} (D = diag(w_i rho_i)),
/// bisection + inverse iteration on S, and the map back phi = D^{-1/2} v.
/// l2 normalization of v is G-normalization of phi by construction.
/// Sign convention: the entry of largest magnitude is positive, with
/// near-ties (1e-8 relative) broken toward the largest node index so
/// that symmetric grids give reproducible signs.
/// Throws SpectralError if any residual exceeds tol.
Spectrum eigendecompose(const WeightedLaplacian& lap, int k, double tol = 1e-8);

/// Indices s >= 1 with |lambda_s - lambda_1| <= rel_tol max(lambda_1, floor).
/// Throws SpectralError when lambda_1 is indistinguishable from
/// lambda_0 at that tolerance (no usable spectral gap).
std::vector<int> slow_group(const Spectrum& spec, double rel_tol = 1e-8);

/// Central-difference estimate of d lambda~_1 / d q_j for the tilted
/// model, one entry per observable. Throws SpectralError when
/// lambda~_1 is degenerate at any stencil point (eigenvalue-crossing
/// derivative is undefined).
std::vector<double> lambda1_sensitivity(const PotentialSpec& potential,
                                        const ObservableSet& observables,
                                        const std::vector<double>& q, double h_step,
                                        const Grid& grid, double degeneracy_rtol = 1e-8);

}  // namespace gfc

#endif
