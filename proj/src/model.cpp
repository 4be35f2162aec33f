#include "gfc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfc/log.hpp"

namespace gfc {

Grid::Grid(double a, double b, int nn) : x_min(a), x_max(b), n(nn) {
  if (n < 3) throw ModelError("grid needs at least 3 nodes");
  if (!(x_max > x_min)) throw ModelError("grid needs x_max > x_min");
  dx = (x_max - x_min) / (n - 1);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) x[i] = x_min + i * dx;
  x[n - 1] = x_max;  // pin the right end exactly
  for (int i = 0; i < n; ++i) w[i] = dx;
  w[0] = w[n - 1] = 0.5 * dx;
}

double PotentialSpec::evaluate(double x) const {
  switch (kind) {
    case Kind::quadratic:
      return x * x / (2.0 * mu);
    case Kind::polynomial: {
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
    case Kind::expression:
      return tree->eval(x);
    case Kind::tabulated:
      throw ModelError("tabulated potential has no off-grid evaluation");
  }
  return 0.0;
}

Field0 PotentialSpec::tabulate(const Grid& grid) const {
  if (kind == Kind::tabulated) {
    if (static_cast<int>(table.size()) != grid.n)
      throw ModelError("tabulated potential size does not match grid");
    return Field0(table);
  }
  Field0 out(grid.n);
  for (int i = 0; i < grid.n; ++i) out[i] = evaluate(grid.x[i]);
  for (double v : out.v)
    if (!std::isfinite(v)) throw ModelError("potential not finite on grid");
  return out;
}

void PotentialSpec::validate() const {
  if (!(beta > 0.0)) throw ModelError("beta must be positive");
  if (kind == Kind::quadratic && !(mu > 0.0)) throw ModelError("mu must be positive");
  if (kind == Kind::expression && !tree) throw ModelError("expression potential has no tree");
}

PotentialSpec quadratic_potential(double mu, double beta) {
  PotentialSpec p;
  p.kind = PotentialSpec::Kind::quadratic;
  p.mu = mu;
  p.beta = beta;
  p.validate();
  return p;
}

PotentialSpec polynomial_potential(std::vector<double> coeffs, double beta) {
  PotentialSpec p;
  p.kind = PotentialSpec::Kind::polynomial;
  p.coeffs = std::move(coeffs);
  p.beta = beta;
  p.validate();
  return p;
}

PotentialSpec tabulated_potential(std::vector<double> values, double beta) {
  PotentialSpec p;
  p.kind = PotentialSpec::Kind::tabulated;
  p.table = std::move(values);
  p.beta = beta;
  p.validate();
  return p;
}

PotentialSpec parse_potential(std::string_view text, double beta) {
  PotentialSpec p;
  p.kind = PotentialSpec::Kind::expression;
  p.tree = expr::parse(text);
  p.beta = beta;
  p.validate();
  return p;
}

ObservableSet make_observables(const std::vector<std::string>& exprs, const Grid& grid) {
  if (exprs.empty()) throw ModelError("need at least one observable");
  ObservableSet set;
  for (const auto& e : exprs) {
    auto tree = expr::parse(e);
    Field0 f(grid.n);
    for (int i = 0; i < grid.n; ++i) f[i] = tree->eval(grid.x[i]);
    for (double v : f.v)
      if (!std::isfinite(v)) throw ModelError("observable '" + e + "' not finite on grid");
    set.names.push_back(e);
    set.values.push_back(std::move(f));
  }
  return set;
}

GibbsState gibbs_state(const PotentialSpec& potential, const Grid& grid) {
  potential.validate();
  const double beta = potential.beta;
  GibbsState g;
  g.grid = grid;
  g.beta = beta;
  g.h = potential.tabulate(grid);

  // exp(-beta(h - min h)) avoids overflow; exp(-beta min h) is folded
  // back into the partition value.
  const double hmin = *std::min_element(g.h.v.begin(), g.h.v.end());
  const int n = grid.n;
  Field0 rho(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    rho[i] = std::exp(-beta * (g.h[i] - hmin));
    s += grid.w[i] * rho[i];
  }
  if (!(s > 0.0) || !std::isfinite(s)) throw ModelError("partition value is zero or not finite");
  g.z = s * std::exp(-beta * hmin);
  g.log_rho = Field0(n);
  const double logs = std::log(s);
  for (int i = 0; i < n; ++i) {
    rho[i] /= s;
    if (!(rho[i] > 0.0)) throw ModelError("Gibbs weight underflowed to zero at a node");
    g.log_rho[i] = -beta * (g.h[i] - hmin) - logs;
  }
  g.rho = std::move(rho);

  g.edge_rho.resize(n - 1);
  g.edge_drift.resize(n - 1);
  for (int e = 0; e < n - 1; ++e) {
    g.edge_rho[e] = 0.5 * (g.rho[e] + g.rho[e + 1]);
    g.edge_drift[e] = -(g.rho[e + 1] - g.rho[e]) / (grid.dx * beta * g.edge_rho[e]);
  }
  return g;
}

GibbsState unit_weight(const Grid& grid) {
  GibbsState g;
  g.grid = grid;
  g.beta = 1.0;
  g.h = Field0(grid.n, 0.0);
  g.rho = Field0(grid.n, 1.0);
  g.log_rho = Field0(grid.n, 0.0);
  g.z = grid.x_max - grid.x_min;
  g.edge_rho.assign(grid.n - 1, 1.0);
  g.edge_drift.assign(grid.n - 1, 0.0);
  return g;
}

PotentialSpec tilt(const PotentialSpec& potential, const std::vector<double>& q,
                   const ObservableSet& observables, const Grid& grid) {
  if (q.size() != observables.count())
    throw ModelError("tilt: dimension mismatch between q and observables");
  Field0 h = potential.tabulate(grid);
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!std::isfinite(q[j])) throw ModelError("tilt: q is not finite");
    const Field0& b = observables.values[j];
    if (b.size() != h.size()) throw ModelError("tilt: observable size mismatch");
    if (q[j] == 0.0) continue;  // keeps the q = 0 tilt bitwise equal to h
    for (std::size_t i = 0; i < h.size(); ++i)
      h[i] -= q[j] * b[i] / potential.beta;
  }
  return tabulated_potential(std::move(h.v), potential.beta);
}

}  // namespace gfc
