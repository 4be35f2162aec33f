#include <doctest.h>

#include <cmath>

#include "gfc/spectral.hpp"

using namespace gfc;

namespace {

Spectrum gaussian_spectrum(int n, int k, double beta = 1.0, double mu = 1.0) {
  const Grid grid(-10.0, 10.0, n);
  return eigendecompose(laplacian_G(gibbs_state(quadratic_potential(mu, beta), grid)), k);
}

}  // namespace

TEST_CASE("Gaussian eigenvalues follow the integer ladder") {
  const Spectrum spec = gaussian_spectrum(2001, 7);
  CHECK(std::fabs(spec.eigenvalues[0]) <= 1e-10);
  CHECK(spec.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-4));
  for (int s = 1; s <= 5; ++s)
    CHECK(spec.eigenvalues[s] / spec.eigenvalues[1] ==
          doctest::Approx(static_cast<double>(s)).epsilon(1e-3));
}

TEST_CASE("spectrum structural invariants") {
  const Grid grid(-10.0, 10.0, 1001);
  const GibbsState g = gibbs_state(quadratic_potential(1.0, 1.0), grid);
  const WeightedLaplacian lap = laplacian_G(g);
  const Spectrum spec = eigendecompose(lap, 16);

  CHECK(spec.gram_residual <= 1e-10);
  double sup0 = 0.0;
  for (double v : spec.modes[0].v) sup0 = std::max(sup0, std::fabs(v - 1.0));
  CHECK(sup0 <= 1e-8);

  for (int s = 0; s < spec.count(); ++s) {
    CHECK(spec.residuals[s] <= 1e-8);
    CHECK(spec.eigenvalues[s] >= -1e-10);
    if (s > 0) CHECK(spec.eigenvalues[s] >= spec.eigenvalues[s - 1]);
    // sign convention: largest-magnitude entry positive
    double mx = 0.0;
    int pick = 0;
    for (int i = 0; i < g.n(); ++i)
      if (std::fabs(spec.modes[s][i]) >= (1.0 - 1e-8) * mx) {
        if (std::fabs(spec.modes[s][i]) > mx) mx = std::fabs(spec.modes[s][i]);
        pick = i;
      }
    CHECK(spec.modes[s][pick] > 0.0);
  }

  // Rayleigh identity lambda_s = <d phi_s, d phi_s>_G
  for (int s = 0; s < spec.count(); ++s) {
    const Field1 ds = d(spec.modes[s], grid);
    CHECK(std::fabs(spec.eigenvalues[s] - inner_G(ds, ds, g)) <=
          1e-8 * std::max(1.0, spec.eigenvalues[s]));
  }
}

TEST_CASE("flat Neumann spectrum approaches pi^2 ladder") {
  const Grid grid(0.0, 1.0, 501);
  const GibbsState flat = gibbs_state(polynomial_potential({0.0}, 1.0), grid);
  const Spectrum spec = eigendecompose(laplacian_G(flat), 3);
  CHECK(std::fabs(spec.eigenvalues[0]) <= 1e-10);
  // cos(pi x) mode with O(dx^2) eigenvalue defect
  CHECK(spec.eigenvalues[1] ==
        doctest::Approx(M_PI * M_PI).epsilon(2.0 * M_PI * M_PI * grid.dx * grid.dx / 12.0));
  CHECK(spec.eigenvalues[2] == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-4));
}

TEST_CASE("eigendecompose is deterministic") {
  const Spectrum a = gaussian_spectrum(501, 6);
  const Spectrum b = gaussian_spectrum(501, 6);
  for (int s = 0; s < a.count(); ++s) {
    CHECK(a.eigenvalues[s] == b.eigenvalues[s]);
    for (int i = 0; i < static_cast<int>(a.modes[s].size()); ++i)
      CHECK(a.modes[s][i] == b.modes[s][i]);
  }
}

TEST_CASE("eigendecompose validates its arguments") {
  const Grid grid(0.0, 1.0, 21);
  const WeightedLaplacian lap =
      laplacian_G(gibbs_state(polynomial_potential({0.0}, 1.0), grid));
  CHECK_THROWS_AS(eigendecompose(lap, 0), SpectralError);
  CHECK_THROWS_AS(eigendecompose(lap, 22), SpectralError);
  CHECK_THROWS_AS(eigendecompose(lap, 3, -1.0), SpectralError);
}

TEST_CASE("slow_group picks out the gap cluster") {
  Spectrum spec;
  spec.eigenvalues = {0.0, 1.0, 1.0 + 1e-12, 2.0};
  spec.modes.assign(4, Field0(5, 0.0));
  SUBCASE("constructed degeneracy") {
    const std::vector<int> g = slow_group(spec, 1e-8);
    REQUIRE(g.size() == 2);
    CHECK(g[0] == 1);
    CHECK(g[1] == 2);
  }
  SUBCASE("nondegenerate ladder") {
    spec.eigenvalues = {0.0, 1.0, 2.0, 3.0};
    const std::vector<int> g = slow_group(spec, 1e-8);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == 1);
  }
  SUBCASE("vanishing gap is an error") {
    spec.eigenvalues = {0.0, 5e-15, 1.0, 2.0};
    CHECK_THROWS_AS(slow_group(spec, 1e-8), SpectralError);
  }
}

TEST_CASE("Gaussian slow group is the single first mode") {
  const Spectrum spec = gaussian_spectrum(1001, 8);
  const std::vector<int> g = slow_group(spec);
  REQUIRE(g.size() == 1);
  CHECK(g[0] == 1);
}

TEST_CASE("tilted spectral gap is field-independent for the Gaussian") {
  const Grid grid(-10.0, 10.0, 2001);
  const PotentialSpec pot = quadratic_potential(1.0, 1.0);
  const ObservableSet obs = make_observables({"x"}, grid);
  for (double q : {-1.0, 0.0, 1.0}) {
    const std::vector<double> sens = lambda1_sensitivity(pot, obs, {q}, 1e-3, grid);
    REQUIRE(sens.size() == 1);
    CHECK(std::fabs(sens[0]) <= 1e-3);
  }
  // tilted eigenvalues stay nonnegative
  const GibbsState tg = gibbs_state(tilt(pot, {1.0}, obs, grid), grid);
  const Spectrum ts = eigendecompose(laplacian_G(tg), 6);
  for (double l : ts.eigenvalues) CHECK(l >= -1e-10);
  CHECK(ts.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("sensitivity estimate converges under step halving") {
  const Grid grid(-6.0, 6.0, 1201);
  const PotentialSpec pot = parse_potential("x^4/4", 1.0);
  const ObservableSet obs = make_observables({"x"}, grid);
  const double s1 = lambda1_sensitivity(pot, obs, {0.5}, 1e-3, grid)[0];
  const double s2 = lambda1_sensitivity(pot, obs, {0.5}, 5e-4, grid)[0];
  CHECK(std::isfinite(s1));
  CHECK(std::fabs(s1 - s2) <= 1e-4 * std::max(1.0, std::fabs(s1)));
}
