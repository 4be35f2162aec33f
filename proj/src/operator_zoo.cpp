#include "gfc/operator_zoo.hpp"

#include <stdexcept>

namespace gfc {

Field1 edge_average(const Field0& f, const Grid& grid) {
  Field1 out(grid.n - 1);
  for (int e = 0; e < grid.n - 1; ++e) out[e] = 0.5 * (f[e] + f[e + 1]);
  return out;
}

Field0 node_average(const Field1& alpha, const Grid& grid) {
  Field0 out(grid.n);
  out[0] = alpha[0];
  out[grid.n - 1] = alpha[grid.n - 2];
  for (int i = 1; i < grid.n - 1; ++i) out[i] = 0.5 * (alpha[i - 1] + alpha[i]);
  return out;
}

Field0 codiff_unweighted(const Field1& alpha, const Grid& grid) {
  // codiff_G specialized at weight one; reuses the same code path.
  return codiff_G(alpha, unit_weight(grid));
}

Field1 edge_drift(const GibbsState& gibbs) { return Field1(gibbs.edge_drift); }

Field0 fp_rhs(const Field0& rho, const GibbsState& gibbs) {
  const Grid& grid = gibbs.grid;
  if (static_cast<int>(rho.size()) != grid.n)
    throw std::invalid_argument("fp_rhs: size mismatch");
  const Field1 drho = d(rho, grid);
  const Field1 rbar = edge_average(rho, grid);
  Field1 flux(grid.n - 1);
  for (int e = 0; e < grid.n - 1; ++e)
    flux[e] = drho[e] / gibbs.beta + rbar[e] * gibbs.edge_drift[e];
  Field0 out = codiff_unweighted(flux, grid);
  for (double& v : out.v) v = -v;
  return out;
}

Field0 L_beta_h(const Field0& phi, const GibbsState& gibbs) {
  const Grid& grid = gibbs.grid;
  const Field1 dphi = d(phi, grid);
  Field0 out = codiff_unweighted(dphi, grid);
  Field1 pair(grid.n - 1);
  for (int e = 0; e < grid.n - 1; ++e) pair[e] = dphi[e] * gibbs.edge_drift[e];
  const Field0 metric = node_average(pair, grid);
  for (int i = 0; i < grid.n; ++i) out[i] = out[i] / gibbs.beta + metric[i];
  return out;
}

Field0 li_rhs(const Field0& phi, const GibbsState& gibbs) {
  Field0 out = L_beta_h(phi, gibbs);
  for (double& v : out.v) v = -v;
  return out;
}

Field1 witten_d(const Field0& phi, const GibbsState& gibbs) {
  const Grid& grid = gibbs.grid;
  Field1 out = d(phi, grid);
  const Field1 pbar = edge_average(phi, grid);
  for (int e = 0; e < grid.n - 1; ++e)
    out[e] -= gibbs.beta * pbar[e] * gibbs.edge_drift[e];
  return out;
}

WittenResult witten_variants(const Field0& f, const GibbsState& gibbs, OperatorVariant tag) {
  const Grid& grid = gibbs.grid;
  const double beta = gibbs.beta;
  switch (tag) {
    case OperatorVariant::delta_W:
      return {codiff_unweighted(witten_d(f, gibbs), grid), std::nullopt};
    case OperatorVariant::D_dagger_D: {
      // direct route: D f = d f + beta fbar dh, then
      // D+ alpha = d+ alpha + beta g((dh)#, alpha#)
      const Field1 fbar = edge_average(f, grid);
      Field1 Df = d(f, grid);
      for (int e = 0; e < grid.n - 1; ++e)
        Df[e] += beta * fbar[e] * gibbs.edge_drift[e];
      Field0 direct = codiff_unweighted(Df, grid);
      Field1 pair(grid.n - 1);
      for (int e = 0; e < grid.n - 1; ++e) pair[e] = gibbs.edge_drift[e] * Df[e];
      const Field0 metric = node_average(pair, grid);
      for (int i = 0; i < grid.n; ++i) direct[i] += beta * metric[i];

      // expanded route: d+ d f + beta f (d+ dh) + beta^2 f |dh|^2
      Field0 expanded = codiff_unweighted(d(f, grid), grid);
      const Field0 ddh = codiff_unweighted(edge_drift(gibbs), grid);
      Field1 dh2(grid.n - 1);
      for (int e = 0; e < grid.n - 1; ++e)
        dh2[e] = gibbs.edge_drift[e] * gibbs.edge_drift[e];
      const Field0 dh2n = node_average(dh2, grid);
      for (int i = 0; i < grid.n; ++i)
        expanded[i] += beta * f[i] * ddh[i] + beta * beta * f[i] * dh2n[i];
      return {std::move(direct), std::move(expanded)};
    }
    case OperatorVariant::fp_rhs:
      return {fp_rhs(f, gibbs), std::nullopt};
    case OperatorVariant::L_beta_h:
      return {L_beta_h(f, gibbs), std::nullopt};
    case OperatorVariant::li_rhs:
      return {li_rhs(f, gibbs), std::nullopt};
  }
  throw std::invalid_argument("witten_variants: unknown tag");
}

}  // namespace gfc
