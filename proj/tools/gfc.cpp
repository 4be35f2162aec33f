#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfc/commands.hpp"
#include "gfc/log.hpp"

namespace {

std::vector<double> parse_q_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gfc: relaxation dynamics engine (diffusion spectra, slow-mode "
               "projection, contact Hamiltonian flows)"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, preset, q_list, out_dir;
  int modes = -1;
  double t_final = -1.0, dt = -1.0, tol_scale = -1.0;
  bool parallel = false, with_modes = false;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--preset", preset, "built-in preset (gaussian)");
  app.add_option("--modes", modes, "number of modes to compute");
  app.add_option("--t-final", t_final, "final time");
  app.add_option("--dt", dt, "time step");
  app.add_option("--q", q_list, "comma-separated applied-field values");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--parallel", parallel, "evaluate scans concurrently");
  app.add_flag("--with-modes", with_modes, "emit a_s columns in trajectory.csv");
  app.add_option("--tolerance-scale", tol_scale, "scale every verification tolerance");

  for (const char* name :
       {"spectrum", "evolve", "contact", "tilted", "verify", "convergence"})
    app.add_subcommand(name);

  CLI11_PARSE(app, argc, argv);

  try {
    gfc::RunConfig cfg;
    if (!config_path.empty()) {
      cfg = gfc::load_config(config_path);
    } else if (preset == "gaussian" || preset.empty()) {
      if (preset.empty())
        gfc::log::info("no config or preset given; using the gaussian preset");
      cfg = gfc::gaussian_preset();
    } else {
      std::cerr << "error: unknown preset '" << preset << "'\n";
      return 2;
    }
    if (modes > 0) cfg.modes = modes;
    if (t_final >= 0.0) cfg.t_final = t_final;
    if (dt > 0.0) cfg.dt = dt;
    if (!q_list.empty()) cfg.q_scan = parse_q_list(q_list);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (tol_scale > 0.0) cfg.tolerance_scale = tol_scale;
    cfg.parallel = parallel;
    cfg.with_mode_columns = with_modes;
    cfg.validate();

    return gfc::commands::run(app.get_subcommands().front()->get_name(), cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
