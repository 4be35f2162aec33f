#ifndef GFC_CONFIG_HPP
#define GFC_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "gfc/model.hpp"

namespace gfc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double beta = 1.0;

  // potential: either an expression string or a structured kind
  std::string potential_expr;
  std::string potential_kind = "quadratic";  // quadratic|polynomial|expression|tabulated
  double mu = 1.0;
  std::vector<double> poly_coeffs;
  std::vector<double> tabulated;

  std::optional<double> domain_min, domain_max;
  int n = 2001;

  std::vector<std::string> observables{"x"};
  std::vector<double> q_scan{0.0};

  int modes = 32;
  double t_final = 1.0;
  double dt = 1e-3;
  int checkpoints = 100;

  double eigen_residual_tol = 1e-8;
  double degeneracy_rtol = 1e-8;
  double tolerance_scale = 1.0;
  double sensitivity_step = 1e-3;

  std::string out_dir = ".";
  bool parallel = false;
  bool with_mode_columns = false;

  // resolved at build time
  PotentialSpec potential() const;
  Grid grid() const;            // applies the quadratic default domain
  double resolved_min() const;
  double resolved_max() const;

  void validate() const;
};

RunConfig gaussian_preset();
RunConfig load_config(const std::string& path);

}  // namespace gfc

#endif
