#include <ostream>

#include "CLI11.hpp"
#include "allmach/cli/run.hpp"
#include "allmach/core/errors.hpp"

namespace allmach::cli {

namespace {

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw SolverError(ErrorKind::InvalidConfig, "--param expects key=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      out[item.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw SolverError(ErrorKind::InvalidConfig, "--param value is not a number in '" + item + "'");
    }
  }
  return out;
}

int execute(const RunConfig& cfg, std::ostream& out) {
  if (cfg.study.empty()) {
    run(cfg, out);
    return 0;
  }
  const auto rows = convergence_study(cfg, out);
  for (const auto& r : rows)
    if (!r.failure.empty()) return 1;
  return 0;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"All-Mach semi-implicit Euler solver"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string scheme = "s4t3", variant, energy = "consistent";
  std::vector<std::string> params;
  // run options live on the root so that a flat key=value config file reaches them
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one problem or run a convergence study");
  run_cmd->fallthrough();
  app.set_config("--config", "", "Plain key=value file; command-line flags win");
  app.add_option("--problem", cfg.problem, "Problem name");
  app.add_option("--param", params, "Problem constant key=value (u_inf, delta, width, gamma)");
  app.add_option("--scheme", scheme, "s4t3 | s4t3-balanced | s2t3 | first-order | weno5rk3");
  app.add_option("--variant", variant, "A1 | A2 | A3 (semi-implicit schemes only)");
  app.add_option("--n", cfg.n, "Cells in x");
  app.add_option("--ny", cfg.ny, "Cells in y (default from the problem's aspect ratio)");
  app.add_option("--eps", cfg.eps, "Mach-number scale (default: problem default)");
  app.add_option("--cfl", cfg.cfl, "CFL number in (0, 1)");
  app.add_option("--t-final", cfg.t_final, "Final time (default: problem default)");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--snapshot-every", cfg.snapshot_every, "Snapshot cadence in steps (0: final only)");
  app.add_option("--diag", cfg.diagnostics,
                 "kinetic_energy | pressure_deviation | divergence | divergence_central4 | "
                 "mass | energy | max_mach");
  app.add_option("--field", cfg.fields, "Final scalar field: vorticity | mach_ratio | divergence");
  app.add_option("--elliptic-tol", cfg.elliptic_tol, "Relative residual of the pressure solve");
  app.add_option("--elliptic-max-iter", cfg.elliptic_max_iter, "Iteration cap (0: automatic)");
  app.add_option("--energy", energy, "Implicit energy closure: consistent | flux");
  app.add_option("--study", cfg.study, "Resolutions of a convergence study");
  app.add_option("--reference", cfg.reference, "Reference snapshot path or compute:N");
  app.add_option("--reference-scheme", cfg.reference_scheme, "Scheme of a computed reference");
  app.add_option("--error-var", cfg.error_variable, "Variable compared in a study");

  std::string manifest;
  std::string replay_out;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-run the configuration stored in a manifest");
  replay_cmd->add_option("--manifest", manifest, "manifest.json of an earlier run")->required();
  replay_cmd->add_option("--out", replay_out, "Output directory (default: the recorded one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (replay_cmd->parsed()) {
      RunConfig c = config_from_manifest(manifest);
      if (!replay_out.empty()) c.out = replay_out;
      return execute(c, out);
    }
    cfg.scheme = scheme_from_string(scheme);
    if (!variant.empty()) cfg.variant = variant_from_string(variant);
    if (energy == "flux") {
      cfg.energy = EnergyUpdate::flux;
    } else if (energy != "consistent") {
      throw SolverError(ErrorKind::InvalidConfig, "unknown energy update '" + energy + "'");
    }
    cfg.params = parse_params(params);
    validate(cfg);
    return execute(cfg, out);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return e.is_config_error() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace allmach::cli
