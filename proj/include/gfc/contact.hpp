#ifndef GFC_CONTACT_HPP
#define GFC_CONTACT_HPP

#include <functional>
#include <vector>

#include "gfc/evolution.hpp"
#include "gfc/thermo.hpp"

namespace gfc {

struct ContactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A scalar function of q with its gradient.
struct ScalarFieldQ {
  std::function<double(const std::vector<double>&)> value;
  std::function<std::vector<double>(const std::vector<double>&)> grad;
};

/// Contact Hamiltonians on T*R^n x R.
///  relaxation: H = gamma1 (psi(q) - z)
///  tilted:     H = (lambda1(q)/beta)(psi(q) - z)
///  general:    H = callable of (p,q,z); partials by central
///              differences with step 1e-6 (1 + |coordinate|)
struct ContactHamiltonianSpec {
  enum class Form { relaxation, tilted, general };
  Form form = Form::relaxation;

  double gamma1 = 1.0;   // relaxation
  ScalarFieldQ psi;      // relaxation, tilted
  double beta = 1.0;     // tilted
  ScalarFieldQ lambda1;  // tilted

  std::function<double(const ThermoPoint&)> general;

  double evaluate(const ThermoPoint& pt) const;
};

ContactHamiltonianSpec relaxation_hamiltonian(double gamma1, ScalarFieldQ psi);
ContactHamiltonianSpec tilted_hamiltonian(double beta, ScalarFieldQ lambda1, ScalarFieldQ psi);
ContactHamiltonianSpec general_hamiltonian(std::function<double(const ThermoPoint&)> h);

struct Tangent {
  std::vector<double> qdot, pdot;
  double zdot = 0.0;
};

/// Canonical contact Hamiltonian vector field:
///   qdot_j = -dH/dp_j,
///   pdot_j =  dH/dq_j + p_j dH/dz,
///   zdot   =  H - sum_j p_j dH/dp_j.
Tangent vector_field(const ContactHamiltonianSpec& H, const ThermoPoint& pt);

/// Explicit integral curve of the relaxation Hamiltonian:
///   q(t) = q(0),
///   p_j(t) = dpsi_j + (p_j(0) - dpsi_j) e^{-gamma1 t},
///   z(t)   = psi + (z(0) - psi) e^{-gamma1 t}.
ThermoPoint flow_closed_form(const ThermoPoint& pt0, double gamma1, double psi,
                             const std::vector<double>& dpsi, double t);

struct ContactTrajectory {
  std::vector<double> t;
  std::vector<ThermoPoint> points;
  std::vector<double> hamiltonian;
};

/// Classical fixed-step fourth-order integration of vector_field.
ContactTrajectory flow_rk4(const ContactHamiltonianSpec& H, const ThermoPoint& pt0, double dt,
                           int steps);

/// Theorem-level harness: slowest-mode moment readouts (z,p)(t)
/// against the closed-form contact flow with gamma1 = lambda_1/beta
/// and psi = psi_G, sharing one quadrature between both sides.
struct EquivalenceReport {
  std::vector<double> q;
  double gamma1 = 0.0;
  double psi = 0.0;
  std::vector<double> dpsi;
  std::vector<double> t;
  std::vector<double> z_flow, z_contact;
  std::vector<std::vector<double>> p_flow, p_contact;  // [sample][j]
  double max_z_discrepancy = 0.0;
  double max_p_discrepancy = 0.0;
  double legendrian_distance_initial = 0.0;
  double legendrian_distance_final = 0.0;
};

EquivalenceReport equivalence_check(const GibbsState& gibbs, const ObservableSet& observables,
                                    const std::vector<double>& q, const StateField& phi0,
                                    const std::vector<double>& t_grid, const Spectrum& spec,
                                    double degeneracy_rtol = 1e-8);

/// Tangent of the tilted system assembled from scalar data:
///   qdot = 0,
///   pdot_j = (lt1/beta)(dpsi_j - p_j) + (dlt1_j/beta)(psi - z),
///   zdot   = (lt1/beta)(psi - z).
Tangent tilted_contact_tangent(double beta, double lt1, const std::vector<double>& dlt1,
                               double psi, const std::vector<double>& dpsi,
                               const ThermoPoint& pt);

/// Alternative z choices along the slowest-mode trajectory.
/// Energy choice z = <Phi_t, h>_G closes; the reported deviation is the
/// RK4-integrated ODE against direct quadrature. Free-energy choice
/// z = -F does not close; the non-closure term <1, ln Phi_t>_G / beta
/// is evaluated at the requested checkpoints.
struct AltZReport {
  std::vector<double> t;
  std::vector<double> energy_ode;         // integrated z(t)
  std::vector<double> energy_quadrature;  // <Phi_t, h>_G
  double max_energy_deviation = 0.0;
  double energy_equilibrium = 0.0;        // <1, h>_G
  std::vector<double> log_residual;       // <1, ln Phi_t>_G / beta
};

AltZReport alt_z_flows(const GibbsState& gibbs, const Spectrum& spec,
                       const ModeCoefficients& coeffs0, const std::vector<double>& t_grid,
                       double degeneracy_rtol = 1e-8);

}  // namespace gfc

#endif
