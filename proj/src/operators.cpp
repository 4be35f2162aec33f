#include "gfc/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace gfc {

namespace {
void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("size mismatch in ") + what);
}
}  // namespace

Field1 d(const Field0& f, const Grid& grid) {
  check_same(f.size(), static_cast<std::size_t>(grid.n), "d");
  Field1 out(grid.n - 1);
  const double inv = 1.0 / grid.dx;
  for (int e = 0; e < grid.n - 1; ++e) out[e] = (f[e + 1] - f[e]) * inv;
  return out;
}

Field0 codiff_G(const Field1& alpha, const GibbsState& gibbs) {
  const int n = gibbs.n();
  check_same(alpha.size(), static_cast<std::size_t>(n - 1), "codiff_G");
  Field0 out(n);
  // flux_e = rbar_e alpha_e, zero beyond the boundary
  for (int i = 0; i < n; ++i) {
    const double fm = (i > 0) ? gibbs.edge_rho[i - 1] * alpha[i - 1] : 0.0;
    const double fp = (i < n - 1) ? gibbs.edge_rho[i] * alpha[i] : 0.0;
    const double m = gibbs.grid.w[i] * gibbs.rho[i];
    if (!(m > 0.0)) throw ModelError("codiff_G: zero weight at a node");
    out[i] = (fm - fp) / m;
  }
  return out;
}

double inner_G(const Field0& a, const Field0& b, const GibbsState& gibbs) {
  const int n = gibbs.n();
  check_same(a.size(), static_cast<std::size_t>(n), "inner_G");
  check_same(b.size(), static_cast<std::size_t>(n), "inner_G");
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += gibbs.grid.w[i] * gibbs.rho[i] * a[i] * b[i];
  return s;
}

double inner_G(const Field1& a, const Field1& b, const GibbsState& gibbs) {
  const int m = gibbs.n() - 1;
  check_same(a.size(), static_cast<std::size_t>(m), "inner_G");
  check_same(b.size(), static_cast<std::size_t>(m), "inner_G");
  double s = 0.0;
  for (int e = 0; e < m; ++e) s += gibbs.grid.dx * gibbs.edge_rho[e] * a[e] * b[e];
  return s;
}

double norm_G(const Field0& a, const GibbsState& gibbs) { return std::sqrt(inner_G(a, a, gibbs)); }
double norm_G(const Field1& a, const GibbsState& gibbs) { return std::sqrt(inner_G(a, a, gibbs)); }

Field0 WeightedLaplacian::apply(const Field0& f) const {
  const int nn = n();
  check_same(f.size(), static_cast<std::size_t>(nn), "WeightedLaplacian::apply");
  // Difference form: row i is sub (f_{i-1}-f_i) + super (f_{i+1}-f_i),
  // identical to the stored matrix since diag = -(sub+super), and it
  // sends constants to exact zero.
  Field0 out(nn);
  out[0] = super[0] * (f[1] - f[0]);
  for (int i = 1; i < nn - 1; ++i)
    out[i] = sub[i - 1] * (f[i - 1] - f[i]) + super[i] * (f[i + 1] - f[i]);
  out[nn - 1] = sub[nn - 2] * (f[nn - 2] - f[nn - 1]);
  return out;
}

void WeightedLaplacian::symmetrized(std::vector<double>& sdiag, std::vector<double>& soff) const {
  const int nn = n();
  sdiag = diag;
  soff.resize(nn - 1);
  // S_{i,i+1} = -rbar_e / (dx sqrt(m_i m_{i+1})); rbar_e dx is
  // recovered from the stored super-diagonal: super_i = -rbar_e/(m_i dx).
  for (int e = 0; e < nn - 1; ++e)
    soff[e] = super[e] * std::sqrt(mass[e] / mass[e + 1]);
}

Field0 WeightedLaplacian::solve_shifted(const Field0& rhs, double c) const {
  const int nn = n();
  check_same(rhs.size(), static_cast<std::size_t>(nn), "solve_shifted");
  std::vector<double> cp(nn), dp(nn);
  double denom = 1.0 + c * diag[0];
  if (denom == 0.0) throw std::runtime_error("singular tridiagonal system");
  cp[0] = c * super[0] / denom;
  dp[0] = rhs[0] / denom;
  for (int i = 1; i < nn; ++i) {
    const double a = c * sub[i - 1];
    denom = (1.0 + c * diag[i]) - a * cp[i - 1];
    if (denom == 0.0) throw std::runtime_error("singular tridiagonal system");
    cp[i] = (i < nn - 1) ? c * super[i] / denom : 0.0;
    dp[i] = (rhs[i] - a * dp[i - 1]) / denom;
  }
  Field0 out(nn);
  out[nn - 1] = dp[nn - 1];
  for (int i = nn - 2; i >= 0; --i) out[i] = dp[i] - cp[i] * out[i + 1];
  return out;
}

WeightedLaplacian laplacian_G(const GibbsState& gibbs) {
  const int n = gibbs.n();
  WeightedLaplacian lap;
  lap.beta = gibbs.beta;
  lap.dx = gibbs.grid.dx;
  lap.sub.resize(n - 1);
  lap.super.resize(n - 1);
  lap.diag.resize(n);
  lap.mass.resize(n);
  for (int i = 0; i < n; ++i) lap.mass[i] = gibbs.grid.w[i] * gibbs.rho[i];
  for (int e = 0; e < n - 1; ++e) {
    const double flux = gibbs.edge_rho[e] / gibbs.grid.dx;
    lap.super[e] = -flux / lap.mass[e];
    lap.sub[e] = -flux / lap.mass[e + 1];
  }
  // Row sums vanish exactly: diag is assembled as minus the sum of the
  // off-diagonal entries, so Delta_G 1 == 0 bitwise.
  lap.diag[0] = -lap.super[0];
  lap.diag[n - 1] = -lap.sub[n - 2];
  for (int i = 1; i < n - 1; ++i) lap.diag[i] = -(lap.sub[i - 1] + lap.super[i]);
  return lap;
}

}  // namespace gfc
