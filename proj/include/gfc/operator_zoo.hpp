#ifndef GFC_OPERATOR_ZOO_HPP
#define GFC_OPERATOR_ZOO_HPP

#include <optional>

#include "gfc/operators.hpp"

namespace gfc {

/// Operator variants tying the formulations of the dynamics together.
enum class OperatorVariant { fp_rhs, L_beta_h, delta_W, D_dagger_D, li_rhs };

/// Edge average (f_i + f_{i+1})/2.
Field1 edge_average(const Field0& f, const Grid& grid);

/// Metric pairing realization: node value averaging the two adjacent
/// edge values; boundary nodes take their single adjacent edge.
Field0 node_average(const Field1& alpha, const Grid& grid);

/// Unweighted codifferential (codiff_G at weight 1).
Field0 codiff_unweighted(const Field1& alpha, const Grid& grid);

/// Edge drift field (dh at midpoints); taken from the Gibbs weight so
/// that (d rho_G)_e + beta rbar_e drift_e == 0 holds exactly.
Field1 edge_drift(const GibbsState& gibbs);

/// Conservative Fokker-Planck right-hand side
///   d rho/dt = -(1/beta) d+ d rho - d+ (rho dh),
/// assembled in flux form with zero end fluxes, so the total mass of
/// the output telescopes to zero exactly.
Field0 fp_rhs(const Field0& rho, const GibbsState& gibbs);

/// L_{beta,h} phi = (1/beta) d+ d phi + g((d phi)#, (dh)#).
Field0 L_beta_h(const Field0& phi, const GibbsState& gibbs);

/// Ground-state-transform right-hand side; identically -L_{beta,h} phi.
Field0 li_rhs(const Field0& phi, const GibbsState& gibbs);

/// Witten derivative d_W phi = d phi - beta phi dh (edge field).
Field1 witten_d(const Field0& phi, const GibbsState& gibbs);

/// delta_W: d+ d_W f.
/// D_dagger_D: D+ D f evaluated directly, with the expanded form
///   d+ d f + beta f (d+ dh) + beta^2 f g((dh)#,(dh)#)
/// returned alongside for comparison.
struct WittenResult {
  Field0 primary;
  std::optional<Field0> expanded;
};
WittenResult witten_variants(const Field0& f, const GibbsState& gibbs, OperatorVariant tag);

}  // namespace gfc

#endif
