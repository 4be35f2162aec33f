#ifndef GFC_COMMANDS_HPP
#define GFC_COMMANDS_HPP

#include <string>

#include <json.hpp>

#include "gfc/config.hpp"
#include "gfc/spectral.hpp"

namespace gfc::commands {

/// Build products used by several commands for one config.
struct Workspace {
  Grid grid;
  GibbsState gibbs;
  ObservableSet observables;
  WeightedLaplacian laplacian;
  Spectrum spectrum;
};

Workspace build_workspace(const RunConfig& cfg);

std::string spectrum_csv(const RunConfig&, const Workspace& ws);
std::string trajectory_csv(const RunConfig& cfg, const Workspace& ws);
std::string contact_csv(const RunConfig& cfg, const Workspace& ws);
std::string psi_csv(const RunConfig& cfg, const Workspace& ws);
nlohmann::json equivalence_report(const RunConfig& cfg, const Workspace& ws);
nlohmann::json tilted_report(const RunConfig& cfg, const Workspace& ws);
nlohmann::json verify_report(const RunConfig& cfg);
std::string convergence_csv(const RunConfig& cfg);

/// Dispatches one CLI command, writes its files under cfg.out_dir,
/// prints a short summary, and returns the process exit status
/// (verify: 0 iff all checks pass).
int run(const std::string& command, const RunConfig& cfg);

}  // namespace gfc::commands

#endif
