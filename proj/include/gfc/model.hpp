#ifndef GFC_MODEL_HPP
#define GFC_MODEL_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gfc/expr.hpp"
#include "gfc/grid.hpp"

namespace gfc {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A scalar potential h together with the inverse temperature beta.
struct PotentialSpec {
  enum class Kind { quadratic, polynomial, expression, tabulated };

  Kind kind = Kind::quadratic;
  double beta = 1.0;

  double mu = 1.0;                  // quadratic: h(x) = x^2 / (2 mu)
  std::vector<double> coeffs;       // polynomial: sum coeffs[k] x^k
  expr::NodePtr tree;               // expression
  std::vector<double> table;        // tabulated node values

  /// Point evaluation; not available for the tabulated kind.
  double evaluate(double x) const;

  /// Node values on a grid (all kinds).
  Field0 tabulate(const Grid& grid) const;

  void validate() const;
};

PotentialSpec quadratic_potential(double mu, double beta);
PotentialSpec polynomial_potential(std::vector<double> coeffs, double beta);
PotentialSpec tabulated_potential(std::vector<double> values, double beta);

/// Parses an arithmetic expression in x into an expression-kind
/// potential. Throws expr::ParseError with the offending offset.
PotentialSpec parse_potential(std::string_view text, double beta = 1.0);

/// Named observables B_1..B_n tabulated on the grid.
struct ObservableSet {
  std::vector<std::string> names;
  std::vector<Field0> values;

  std::size_t count() const { return values.size(); }
};

ObservableSet make_observables(const std::vector<std::string>& exprs, const Grid& grid);

/// Normalized Gibbs weight on a grid.
///
/// rho is strictly positive and discretely renormalized so that
/// sum_i w_i rho_i == 1 to round-off. z holds the partition value
/// (trapezoid quadrature of exp(-beta h)). edge_rho caches the
/// midpoint weights (rho_i + rho_{i+1})/2 and edge_drift the edge
/// field  -(d rho)_e / (beta edge_rho_e), which coincides with h' at
/// the midpoint to second order and keeps the discrete relation
/// (d rho)_e = -beta edge_rho_e drift_e exact.
struct GibbsState {
  Grid grid;
  double beta = 1.0;
  Field0 rho;
  double z = 0.0;
  Field0 h;                        // potential node values
  Field0 log_rho;                  // ln rho, assembled without underflow
  std::vector<double> edge_rho;    // size n-1
  std::vector<double> edge_drift;  // size n-1

  int n() const { return grid.n; }
};

GibbsState gibbs_state(const PotentialSpec& potential, const Grid& grid);

/// Weight identically 1 (no renormalization); backs the unweighted
/// codifferential and inner products.
GibbsState unit_weight(const Grid& grid);

/// Tilted potential  h~ = h - (1/beta) sum_j q_j B_j, returned as a
/// tabulated potential on the grid the observables live on.
PotentialSpec tilt(const PotentialSpec& potential, const std::vector<double>& q,
                   const ObservableSet& observables, const Grid& grid);

}  // namespace gfc

#endif
