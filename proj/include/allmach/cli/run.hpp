#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"
#include "allmach/imex/stepper.hpp"
#include "allmach/problems/problem.hpp"

namespace allmach::cli {

/// s4t3: WENO5 in space with the SI-IMEX(4,4,3) pair. s2t3: same pair with
/// second-order TVD reconstruction. first-order: one-stage pair with WENO5.
/// weno5rk3: fully explicit SSP-RK3 reference.
enum class Scheme { s4t3, s4t3_balanced, s2t3, first_order, weno5rk3 };

/// A1: alpha rule, characteristic explicit flux. A2: alpha rule, componentwise
/// everywhere. A3: alpha = 0, componentwise everywhere.
enum class Variant { A1, A2, A3 };

Scheme scheme_from_string(std::string_view name);
std::string to_string(Scheme scheme);
Variant variant_from_string(std::string_view name);
std::string to_string(Variant variant);
bool is_semi_implicit(Scheme scheme);

struct RunConfig {
  std::string problem;
  // problem constants: u_inf (gresho), delta and width (shear), gamma (acoustic*)
  std::map<std::string, double> params;
  int n = 0;
  int ny = 0;
  Scheme scheme = Scheme::s4t3;
  // unset means A1 for semi-implicit schemes
  std::optional<Variant> variant;
  double eps = 0.0;      // <= 0 keeps the problem default
  double cfl = 0.25;
  double t_final = 0.0;  // <= 0 keeps the problem default
  std::filesystem::path out;
  int snapshot_every = 0;
  std::vector<std::string> diagnostics;
  std::vector<std::string> fields;  // vorticity, mach_ratio, divergence
  double elliptic_tol = 1e-11;
  int elliptic_max_iter = 0;
  EnergyUpdate energy = EnergyUpdate::consistent;
  std::vector<int> study;
  std::string reference;         // snapshot path or compute:N
  std::string reference_scheme;  // empty: the run scheme
  std::string error_variable;    // empty: the problem default
};

/// Throws InvalidConfig for unusable settings.
void validate(const RunConfig& cfg);

ProblemSpec build_problem(const RunConfig& cfg);

struct SpatialBundle {
  EulerParams params;
  StepperOptions options;
};

SpatialBundle variant_dispatch(Variant variant, const EulerParams& base, Reconstruction recon);

std::unique_ptr<TimeIntegrator> make_integrator(const RunConfig& cfg, const ProblemSpec& spec,
                                                const Grid& grid);

using Series = std::vector<std::pair<double, double>>;

struct RunResult {
  Grid grid;
  EulerParams params;
  ConservedField u;
  int steps = 0;
  double t = 0.0;
  double wall_seconds = 0.0;
  std::map<std::string, Series> series;
};

/// Scalar diagnostic of a state by name: kinetic_energy, pressure_deviation,
/// divergence, divergence_central4, mass, energy, max_mach.
double scalar_diagnostic(std::string_view name, const ConservedField& u, const Grid& grid,
                         const EulerParams& prm, const ProblemSpec& spec);

/// Runs the configured problem at n x ny without writing anything. The
/// observer, if set, sees every accepted step.
RunResult simulate(const RunConfig& cfg, int n, int ny, const StepObserver& observer = {});

/// Simulates and writes snapshots, diagnostic series, requested fields and
/// manifest.json into cfg.out.
RunResult run(const RunConfig& cfg, std::ostream& log);

struct StudyRow {
  int n = 0;
  double error = 0.0;
  double order = 0.0;  // NaN on the first row or next to a failed row
  std::string failure;
};

/// Runs every N of cfg.study and compares the error variable against the
/// reference restricted to each grid. Failed rows are recorded and skipped.
std::vector<StudyRow> convergence_study(const RunConfig& cfg, std::ostream& log);

void write_convergence_table(const std::filesystem::path& path, const std::vector<StudyRow>& rows);

/// Scalar field as `x[,y],value` rows.
void write_field(const std::filesystem::path& path, const Field& f, const Grid& grid);

std::string manifest_config_json(const RunConfig& cfg);
RunConfig config_from_manifest(const std::filesystem::path& manifest);

/// Command-line entry point. Returns 0 on success, 1 on numerical failure
/// and 2 on configuration errors.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace allmach::cli
