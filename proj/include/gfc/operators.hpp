#ifndef GFC_OPERATORS_HPP
#define GFC_OPERATORS_HPP

#include "gfc/model.hpp"

namespace gfc {

/// Exterior derivative: (df)_{i+1/2} = (f_{i+1} - f_i)/dx.
Field1 d(const Field0& f, const Grid& grid);

/// Weighted codifferential, the exact discrete adjoint of d under the
/// weighted inner products:
///   (codiff_G alpha)_i = (rbar_{i-1/2} a_{i-1/2} - rbar_{i+1/2} a_{i+1/2}) / (w_i rho_i)
/// with zero flux beyond both ends. Boundary rows divide by w_i rho_i
/// (w_i = dx/2 there), which is what makes
///   <codiff_G a, f>_G == <a, d f>_G   hold to round-off for all a, f.
Field0 codiff_G(const Field1& alpha, const GibbsState& gibbs);

/// Weighted inner products: nodes against w_i rho_i, edges against
/// dx rbar_e.
double inner_G(const Field0& a, const Field0& b, const GibbsState& gibbs);
double inner_G(const Field1& a, const Field1& b, const GibbsState& gibbs);

double norm_G(const Field0& a, const GibbsState& gibbs);
double norm_G(const Field1& a, const GibbsState& gibbs);

/// Tridiagonal matrix of Delta_G = codiff_G . d (positive
/// semi-definite; annihilates constants exactly). Stores everything
/// needed to apply itself, to symmetrize, and to run implicit solves,
/// so it has no lifetime ties to the GibbsState it came from.
struct WeightedLaplacian {
  double beta = 1.0;
  double dx = 0.0;
  std::vector<double> sub, diag, super;  // sizes n-1, n, n-1
  std::vector<double> mass;              // m_i = w_i rho_i

  int n() const { return static_cast<int>(diag.size()); }
  Field0 apply(const Field0& f) const;

  /// Similarity-transformed symmetric tridiagonal
  /// S = D^{1/2} A D^{-1/2}, D = diag(mass). The off-diagonal is
  /// computed once from the shared edge weight, so S is symmetric in
  /// floating point, not merely up to round-off.
  void symmetrized(std::vector<double>& sdiag, std::vector<double>& soff) const;

  /// Solves (I + c Delta_G) out = rhs by the Thomas algorithm.
  /// The system is strictly diagonally dominant for c > 0.
  Field0 solve_shifted(const Field0& rhs, double c) const;
};

WeightedLaplacian laplacian_G(const GibbsState& gibbs);

}  // namespace gfc

#endif
