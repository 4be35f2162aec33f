#ifndef GFC_THERMO_HPP
#define GFC_THERMO_HPP

#include <vector>

#include "gfc/evolution.hpp"
#include "gfc/model.hpp"

namespace gfc {

/// A point (p, q, z) of the contact manifold T*R^n x R.
struct ThermoPoint {
  std::vector<double> p;
  std::vector<double> q;
  double z = 0.0;
};

struct PsiG {
  double value = 0.0;
  std::vector<double> grad;                // order >= 1
  std::vector<std::vector<double>> hess;   // order >= 2
};

/// psi_G(q) = <exp(q.B), 1>_G with gradient and Hessian by direct
/// quadrature. All three quadratures share one log-sum-exp guard:
/// the largest exponent of q.B + ln rho_G is factored out, so e^{q.B}
/// never overflows unless the result itself does.
PsiG psi_G(const std::vector<double>& q, const ObservableSet& observables,
           const GibbsState& gibbs, int order);

/// z = <Phi_t, exp(q.B)>_G and p_j = <Phi_t, B_j exp(q.B)>_G.
struct Moments {
  double z = 0.0;
  std::vector<double> p;
};
Moments moment_observables(const StateField& phi, const std::vector<double>& q,
                           const ObservableSet& observables, const GibbsState& gibbs);

/// Equilibrium point (grad psi_G(q), q, psi_G(q)).
ThermoPoint legendrian(const std::vector<double>& q, const ObservableSet& observables,
                       const GibbsState& gibbs);

/// E_t[B] = sum_i w_i B_i rho_i for a density, or <Phi, B>_G for a
/// transformed state.
double expectation(const Field0& rho, const Field0& B, const Grid& grid);
double expectation(const StateField& phi, const Field0& B, const GibbsState& gibbs);

/// Smallest eigenvalue of a small dense symmetric matrix (cyclic
/// Jacobi); used for the psi_G convexity check.
double min_eigenvalue_sym(std::vector<std::vector<double>> m);

}  // namespace gfc

#endif
