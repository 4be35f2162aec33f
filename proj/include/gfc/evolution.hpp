#ifndef GFC_EVOLUTION_HPP
#define GFC_EVOLUTION_HPP

#include <vector>

#include "gfc/operators.hpp"
#include "gfc/spectral.hpp"

namespace gfc {

/// The transformed state Phi_t (rho_t = rho_G Phi_t) at a time stamp.
struct StateField {
  Field0 phi;
  double time = 0.0;
};

/// Expansion coefficients a^s at a reference time.
struct ModeCoefficients {
  std::vector<double> a;
  double beta = 1.0;

  int count() const { return static_cast<int>(a.size()); }
};

/// a^s = <Phi_0, phi_s>_G. reconstruction_residual gets the G-norm of
/// Phi_0 minus its truncated expansion (pass nullptr to skip).
ModeCoefficients expand(const StateField& phi0, const Spectrum& spec, const GibbsState& gibbs,
                        double* reconstruction_residual = nullptr);

/// Phi_t = sum_s a^s exp(-lambda_s t / beta) phi_s. Negative t is
/// permitted but logged: it amplifies every nonzero mode.
StateField propagate(const ModeCoefficients& coeffs, double t, const Spectrum& spec);

/// Coefficient-level solution map a^s -> a^s exp(-lambda_s t / beta).
ModeCoefficients propagate_coeffs(const ModeCoefficients& coeffs, double t,
                                  const Spectrum& spec);

/// Zeroes every a^s outside {0} union group.
ModeCoefficients project_slowest(const ModeCoefficients& coeffs, const std::vector<int>& group);

/// Slowest-mode field at time t for a normalized state (a^0 = 1):
/// Phi_t = 1 + exp(-lambda_1 t / beta) sum_{s in group} a^s phi_s.
/// The whole group decays at the common rate lambda_1 =
/// eigenvalue(group.front()), which is the degenerate-case form.
StateField propagate_slowest(const ModeCoefficients& coeffs, const std::vector<int>& group,
                             double t, const Spectrum& spec);

/// One Crank-Nicolson step:
/// (I + dt/(2 beta) Delta_G) Phi_{t+dt} = (I - dt/(2 beta) Delta_G) Phi_t.
StateField step_crank_nicolson(const StateField& phi, double dt, const WeightedLaplacian& lap);

/// Lyapunov functional (beta/2) <d Phi, d Phi>_G.
double lyapunov(const StateField& phi, const GibbsState& gibbs);

struct MassNormalized {
  Field0 field;
  double correction;  // factor the raw field was divided by
};

/// rho = rho_G Phi, renormalized to unit mass.
MassNormalized density(const StateField& phi, const GibbsState& gibbs);

/// Ground-state transform Phi = rho / rho_G, renormalized to unit
/// mass. Rejects nonpositive rho nodes.
MassNormalized ground_state_transform(const Field0& rho, const GibbsState& gibbs);

struct FreeEnergyParts {
  double free_energy;  // F = S/beta - H
  double entropy;      // S = -sum w rho ln rho
  double energy;       // H = sum w h rho
};

/// Evaluated on rho = rho_G Phi. Nodes with rho below 1e-300
/// contribute zero entropy (x ln x -> 0); a negative rho at any node
/// with weight above that threshold is an error.
FreeEnergyParts free_energy(const StateField& phi, const GibbsState& gibbs);

struct TrajectorySample {
  double t = 0.0;
  double mass = 0.0;
  double lyapunov = 0.0;
  double free_energy = 0.0;
  double entropy = 0.0;
  double energy = 0.0;
};

TrajectorySample sample_state(const StateField& phi, const GibbsState& gibbs);

/// Deterministic band-limited profile over the first n_modes modes:
/// a^0 = 1 and a^s = amplitude 2^{-s} (-1)^{s+1} / max(1, sup|phi_s|),
/// which keeps the reconstructed field positive for amplitude < 1.
ModeCoefficients band_limited_profile(const Spectrum& spec, int n_modes, double amplitude,
                                      double beta);

}  // namespace gfc

#endif
