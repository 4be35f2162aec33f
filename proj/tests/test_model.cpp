#include <doctest.h>

#include <cmath>

#include "gfc/model.hpp"
#include "gfc/operators.hpp"

using namespace gfc;

namespace {

// independent high-resolution trapezoid quadrature of exp(-beta h)
double partition_oracle(const PotentialSpec& pot, double a, double b, int n) {
  const double dx = (b - a) / (n - 1);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 * dx : dx;
    s += w * std::exp(-pot.beta * pot.evaluate(a + i * dx));
  }
  return s;
}

}  // namespace

TEST_CASE("Gibbs state of the quadratic potential") {
  const Grid grid(-10.0, 10.0, 2001);
  const GibbsState g = gibbs_state(quadratic_potential(1.0, 1.0), grid);
  CHECK(g.z == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-8));
  double mass = 0.0;
  for (int i = 0; i < grid.n; ++i) mass += grid.w[i] * g.rho[i];
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  for (double r : g.rho.v) CHECK(r > 0.0);
}

TEST_CASE("constant potential gives the uniform weight") {
  const Grid grid(0.0, 1.0, 101);
  const GibbsState g = gibbs_state(polynomial_potential({3.5}, 2.0), grid);
  for (int i = 0; i < grid.n; ++i) CHECK(g.rho[i] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("quartic partition value against a high-resolution oracle") {
  // domain chosen so beta h spans well under the exp underflow line
  const Grid grid(-6.0, 6.0, 2001);
  const PotentialSpec pot = parse_potential("x^4/4", 1.0);
  const GibbsState g = gibbs_state(pot, grid);
  double mass = 0.0;
  for (int i = 0; i < grid.n; ++i) mass += grid.w[i] * g.rho[i];
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  const double zref = partition_oracle(pot, -6.0, 6.0, 64001);
  CHECK(g.z == doctest::Approx(zref).epsilon(1e-10));
}

TEST_CASE("Gibbs weight is invariant under constant potential shifts") {
  const Grid grid(-8.0, 8.0, 501);
  const GibbsState a = gibbs_state(parse_potential("x^2/2", 1.0), grid);
  const GibbsState b = gibbs_state(parse_potential("x^2/2 + 123.5", 1.0), grid);
  for (int i = 0; i < grid.n; ++i)
    CHECK(std::fabs(a.rho[i] - b.rho[i]) <= 1e-12);
  CHECK(b.z == doctest::Approx(a.z * std::exp(-123.5)).epsilon(1e-12));
}

TEST_CASE("overflow guard handles strongly scaled potentials") {
  const Grid grid(-10.0, 10.0, 501);
  // beta h spans ~5000; the raw exponential would underflow to zero
  // on most of the domain, which the state rejects explicitly
  CHECK_THROWS_AS(gibbs_state(parse_potential("50*x^2", 2.0), grid), ModelError);
  // a moderate span stays representable and normalized
  const GibbsState g = gibbs_state(parse_potential("3*x^2 + 100", 1.0), grid);
  double mass = 0.0;
  for (int i = 0; i < grid.n; ++i) mass += grid.w[i] * g.rho[i];
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tilt with q = 0 reproduces the potential bitwise") {
  const Grid grid(-10.0, 10.0, 401);
  const PotentialSpec pot = quadratic_potential(1.0, 1.0);
  const ObservableSet obs = make_observables({"x"}, grid);
  const PotentialSpec tilted = tilt(pot, {0.0}, obs, grid);
  const Field0 h = pot.tabulate(grid);
  REQUIRE(tilted.kind == PotentialSpec::Kind::tabulated);
  for (int i = 0; i < grid.n; ++i) CHECK(tilted.table[i] == h[i]);
}

TEST_CASE("tilted Gaussian partition value and minimizer") {
  const Grid grid(-10.0, 10.0, 2001);
  const PotentialSpec pot = quadratic_potential(1.0, 1.0);
  const ObservableSet obs = make_observables({"x"}, grid);
  const PotentialSpec tilted = tilt(pot, {1.0}, obs, grid);
  const GibbsState g = gibbs_state(tilted, grid);
  CHECK(g.z == doctest::Approx(std::exp(0.5) * std::sqrt(2.0 * M_PI)).epsilon(1e-8));
  // completing the square puts the minimum of h - x at x = 1
  int argmin = 0;
  for (int i = 1; i < grid.n; ++i)
    if (tilted.table[i] < tilted.table[argmin]) argmin = i;
  CHECK(grid.x[argmin] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tilt rejects dimension mismatches") {
  const Grid grid(-1.0, 1.0, 11);
  const ObservableSet obs = make_observables({"x"}, grid);
  CHECK_THROWS_AS(tilt(quadratic_potential(1.0, 1.0), {0.1, 0.2}, obs, grid), ModelError);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(quadratic_potential(-1.0, 1.0), ModelError);
  CHECK_THROWS_AS(quadratic_potential(1.0, 0.0), ModelError);
  CHECK_THROWS_AS(Grid(0.0, 1.0, 2), ModelError);
  CHECK_THROWS_AS(Grid(1.0, 0.0, 11), ModelError);
  const Grid grid(-1.0, 1.0, 11);
  CHECK_THROWS_AS(gibbs_state(tabulated_potential({1.0, 2.0}, 1.0), grid), ModelError);
  CHECK_THROWS_AS(make_observables({}, grid), ModelError);
  CHECK_THROWS_AS(make_observables({"1/0*x"}, grid), ModelError);
}

TEST_CASE("grid weights sum to the domain length") {
  const Grid grid(-3.0, 5.0, 257);
  double s = 0.0;
  for (double w : grid.w) s += w;
  CHECK(s == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(grid.x.front() == -3.0);
  CHECK(grid.x.back() == 5.0);
}
