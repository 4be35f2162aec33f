#include "gfc/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace gfc {

namespace {

struct GuardedWeights {
  std::vector<double> ew;  // w_i exp(q.B_i + ln rho_i - m)
  double scale;            // exp(m)
};

GuardedWeights guarded_weights(const std::vector<double>& q, const ObservableSet& obs,
                               const GibbsState& gibbs) {
  const int n = gibbs.n();
  if (q.size() != obs.count())
    throw ModelError("moment quadrature: dimension mismatch between q and observables");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) {
    double g = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) g += q[j] * obs.values[j][i];
    t[i] = g + gibbs.log_rho[i];
  }
  double m = t[0];
  for (double v : t) m = std::max(m, v);
  GuardedWeights out;
  out.scale = std::exp(m);
  if (!std::isfinite(out.scale))
    throw ModelError("moment quadrature: exp(q.B) overflows even after guard");
  out.ew.resize(n);
  for (int i = 0; i < n; ++i) out.ew[i] = gibbs.grid.w[i] * std::exp(t[i] - m);
  return out;
}

}  // namespace

PsiG psi_G(const std::vector<double>& q, const ObservableSet& obs, const GibbsState& gibbs,
           int order) {
  const GuardedWeights gw = guarded_weights(q, obs, gibbs);
  const int n = gibbs.n();
  const std::size_t nq = q.size();
  PsiG out;
  double v = 0.0;
  for (int i = 0; i < n; ++i) v += gw.ew[i];
  out.value = gw.scale * v;
  if (!std::isfinite(out.value)) throw ModelError("psi_G overflows");
  if (order >= 1) {
    out.grad.assign(nq, 0.0);
    for (std::size_t j = 0; j < nq; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += gw.ew[i] * obs.values[j][i];
      out.grad[j] = gw.scale * s;
    }
  }
  if (order >= 2) {
    out.hess.assign(nq, std::vector<double>(nq, 0.0));
    for (std::size_t j = 0; j < nq; ++j)
      for (std::size_t k = j; k < nq; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += gw.ew[i] * obs.values[j][i] * obs.values[k][i];
        out.hess[j][k] = out.hess[k][j] = gw.scale * s;
      }
  }
  return out;
}

Moments moment_observables(const StateField& phi, const std::vector<double>& q,
                           const ObservableSet& obs, const GibbsState& gibbs) {
  const GuardedWeights gw = guarded_weights(q, obs, gibbs);
  const int n = gibbs.n();
  Moments out;
  double z = 0.0;
  for (int i = 0; i < n; ++i) z += gw.ew[i] * phi.phi[i];
  out.z = gw.scale * z;
  out.p.assign(q.size(), 0.0);
  for (std::size_t j = 0; j < q.size(); ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += gw.ew[i] * phi.phi[i] * obs.values[j][i];
    out.p[j] = gw.scale * s;
  }
  return out;
}

ThermoPoint legendrian(const std::vector<double>& q, const ObservableSet& obs,
                       const GibbsState& gibbs) {
  const PsiG psi = psi_G(q, obs, gibbs, 1);
  ThermoPoint pt;
  pt.q = q;
  pt.p = psi.grad;
  pt.z = psi.value;
  return pt;
}

double expectation(const Field0& rho, const Field0& B, const Grid& grid) {
  if (rho.size() != B.size() || static_cast<int>(rho.size()) != grid.n)
    throw std::invalid_argument("expectation: size mismatch");
  double s = 0.0;
  for (int i = 0; i < grid.n; ++i) s += grid.w[i] * B[i] * rho[i];
  return s;
}

double expectation(const StateField& phi, const Field0& B, const GibbsState& gibbs) {
  return inner_G(phi.phi, B, gibbs);
}

double min_eigenvalue_sym(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("min_eigenvalue_sym: empty matrix");
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (m[p][q] == 0.0) continue;
        const double theta = 0.5 * std::atan2(2.0 * m[p][q], m[q][q] - m[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t i = 0; i < n; ++i) {
          const double mip = m[i][p], miq = m[i][q];
          m[i][p] = c * mip - s * miq;
          m[i][q] = s * mip + c * miq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double mpi = m[p][i], mqi = m[q][i];
          m[p][i] = c * mpi - s * mqi;
          m[q][i] = s * mpi + c * mqi;
        }
      }
  }
  double mn = m[0][0];
  for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, m[i][i]);
  return mn;
}

}  // namespace gfc
