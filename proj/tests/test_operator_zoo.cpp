#include <doctest.h>

#include <cmath>

#include "gfc/operator_zoo.hpp"
#include "gfc/reporting.hpp"
#include "gfc/spectral.hpp"

using namespace gfc;

namespace {

GibbsState gaussian_state(int n) {
  return gibbs_state(quadratic_potential(1.0, 1.0), Grid(-10.0, 10.0, n));
}

Field0 smooth_field(const Grid& grid) {
  Field0 f(grid.n);
  for (int i = 0; i < grid.n; ++i)
    f[i] = std::sin(grid.x[i]) + 0.3 * std::cos(2.0 * grid.x[i]);
  return f;
}

double interior_rel_sup(const Field0& a, const Field0& b) {
  double diff = 0.0, scale = 1.0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    diff = std::max(diff, std::fabs(a[i] - b[i]));
    scale = std::max({scale, std::fabs(a[i]), std::fabs(b[i])});
  }
  return diff / scale;
}

}  // namespace

TEST_CASE("the Gibbs density is a stationary point of the flux form") {
  const GibbsState g = gaussian_state(2001);
  const Field0 rhs = fp_rhs(g.rho, g);
  for (double v : rhs.v) CHECK(std::fabs(v) <= 1e-12);
}

TEST_CASE("flux form conserves mass exactly") {
  const GibbsState g = gaussian_state(1001);
  Field0 rho(g.n());
  for (int i = 0; i < g.n(); ++i)
    rho[i] = g.rho[i] * (1.0 + 0.4 * std::sin(g.grid.x[i]));
  const Field0 rhs = fp_rhs(rho, g);
  double mass = 0.0;
  for (int i = 0; i < g.n(); ++i) mass += g.grid.w[i] * rhs[i];
  CHECK(std::fabs(mass) <= 1e-12);
}

TEST_CASE("density evolution equals the transformed-state evolution") {
  const GibbsState g = gaussian_state(2001);
  const WeightedLaplacian lap = laplacian_G(g);
  const Field0 phi = smooth_field(g.grid);
  Field0 rho(g.n());
  for (int i = 0; i < g.n(); ++i) rho[i] = g.rho[i] * phi[i];
  const Field0 got = fp_rhs(rho, g);
  const Field0 lg = lap.apply(phi);
  Field0 want(g.n());
  for (int i = 0; i < g.n(); ++i) want[i] = -g.rho[i] * lg[i];
  CHECK(interior_rel_sup(got, want) <= 1.0 * g.grid.dx * g.grid.dx);
}

TEST_CASE("weighted Laplacian equals beta times the drift form") {
  std::vector<double> hs, errs;
  for (int n : {251, 501, 1001, 2001}) {
    const GibbsState g = gaussian_state(n);
    const WeightedLaplacian lap = laplacian_G(g);
    const Field0 phi = smooth_field(g.grid);
    const Field0 lg = lap.apply(phi);
    Field0 bl = L_beta_h(phi, g);
    for (double& v : bl.v) v *= g.beta;
    const double r = interior_rel_sup(lg, bl);
    hs.push_back(g.grid.dx);
    errs.push_back(r);
    CHECK(r <= 100.0 * g.grid.dx * g.grid.dx);
  }
  CHECK(fitted_order(hs, errs) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("drift form with constant potential reduces to the plain Laplacian") {
  const Grid grid(0.0, 1.0, 201);
  const GibbsState flat = gibbs_state(polynomial_potential({0.0}, 2.0), grid);
  const Field0 phi = smooth_field(grid);
  const Field0 got = L_beta_h(phi, flat);
  const Field0 want = codiff_unweighted(d(phi, grid), grid);
  for (int i = 0; i < grid.n; ++i)
    CHECK(got[i] == doctest::Approx(want[i] / 2.0).epsilon(1e-14).scale(1.0));
}

TEST_CASE("drift form is symmetric in the weighted inner product") {
  const GibbsState g = gaussian_state(801);
  Field0 p1(g.n()), p2(g.n());
  for (int i = 0; i < g.n(); ++i) {
    p1[i] = std::sin(2.0 * g.grid.x[i]);
    p2[i] = std::cos(g.grid.x[i]) + 0.1 * g.grid.x[i];
  }
  const double s1 = inner_G(L_beta_h(p1, g), p2, g);
  const double s2 = inner_G(p1, L_beta_h(p2, g), g);
  CHECK(std::fabs(s1 - s2) <= 1e-8 * std::max(1.0, std::fabs(s1)));
}

TEST_CASE("ground-state right-hand side") {
  const GibbsState g = gaussian_state(2001);
  const Field0 phi = smooth_field(g.grid);
  const Field0 li = li_rhs(phi, g);
  const Field0 L = L_beta_h(phi, g);
  for (int i = 0; i < g.n(); ++i) CHECK(li[i] == -L[i]);

  // Phi = 1 is annihilated
  const Field0 z = li_rhs(Field0(g.n(), 1.0), g);
  for (double v : z.v) CHECK(v == 0.0);

  // Gaussian with Phi = x: li_rhs is -x away from the ends
  Field0 x(g.n());
  for (int i = 0; i < g.n(); ++i) x[i] = g.grid.x[i];
  const Field0 lx = li_rhs(x, g);
  for (int i = 0; i < g.n(); ++i)
    if (std::fabs(g.grid.x[i]) <= 2.0)
      CHECK(lx[i] == doctest::Approx(-g.grid.x[i]).epsilon(2e-4).scale(1.0));
}

TEST_CASE("Witten derivative is adjoint to the plain codifferential") {
  const GibbsState g = gaussian_state(1001);
  DetRng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    Field0 phi(g.n());
    Field1 alpha(g.n() - 1);
    for (auto& v : phi.v) v = rng.next();
    for (auto& v : alpha.v) v = rng.next();
    const double lhs = inner_G(witten_d(phi, g), alpha, g);
    const double rhs = inner_G(phi, codiff_unweighted(alpha, g.grid), g);
    CHECK(std::fabs(lhs - rhs) <= 1e-8 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST_CASE("sign-difference identity between the flux and Witten forms") {
  const GibbsState g = gaussian_state(1001);
  Field0 rho(g.n());
  for (int i = 0; i < g.n(); ++i)
    rho[i] = g.rho[i] * (1.0 + 0.3 * std::cos(g.grid.x[i]));
  const Field0 fp = fp_rhs(rho, g);
  const Field0 dw = witten_variants(rho, g, OperatorVariant::delta_W).primary;
  const Field1 rbar = edge_average(rho, g.grid);
  Field1 flux(g.n() - 1);
  for (int e = 0; e < g.n() - 1; ++e) flux[e] = rbar[e] * g.edge_drift[e];
  const Field0 div = codiff_unweighted(flux, g.grid);
  for (int i = 0; i < g.n(); ++i)
    CHECK(fp[i] + dw[i] / g.beta == doctest::Approx(-2.0 * div[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("conjugated second-order operator matches its expansion") {
  std::vector<double> hs, errs;
  for (int n : {251, 501, 1001, 2001}) {
    const GibbsState g = gaussian_state(n);
    const Field0 phi = smooth_field(g.grid);
    const WittenResult r = witten_variants(phi, g, OperatorVariant::D_dagger_D);
    REQUIRE(r.expanded.has_value());
    const double err = interior_rel_sup(r.primary, *r.expanded);
    hs.push_back(g.grid.dx);
    errs.push_back(err);
    CHECK(err <= 100.0 * g.grid.dx * g.grid.dx);
  }
  CHECK(fitted_order(hs, errs) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("three formulations agree at second order") {
  std::vector<double> hs, errs;
  for (int n : {251, 501, 1001, 2001}) {
    const GibbsState g = gaussian_state(n);
    const WeightedLaplacian lap = laplacian_G(g);
    const Field0 phi = smooth_field(g.grid);
    Field0 a = lap.apply(phi);
    for (double& v : a.v) v *= -1.0 / g.beta;
    const Field0 b = li_rhs(phi, g);
    Field0 rho_phi(g.n());
    for (int i = 0; i < g.n(); ++i) rho_phi[i] = g.rho[i] * phi[i];
    Field0 c = fp_rhs(rho_phi, g);
    for (int i = 0; i < g.n(); ++i) c[i] /= g.rho[i];
    const double err =
        std::max({interior_rel_sup(a, b), interior_rel_sup(b, c), interior_rel_sup(a, c)});
    hs.push_back(g.grid.dx);
    errs.push_back(err);
  }
  const double order = fitted_order(hs, errs);
  CHECK(order == doctest::Approx(2.0).epsilon(0.1));
}
