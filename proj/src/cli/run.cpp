#include "allmach/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <numbers>
#include <set>

#include "allmach/core/csv.hpp"
#include "allmach/core/errors.hpp"
#include "allmach/imex/tableau.hpp"
#include "allmach/problems/diagnostics.hpp"
#include "allmach/problems/reference.hpp"
#include "json.hpp"

namespace allmach::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw SolverError(ErrorKind::InvalidConfig, what);
}

const std::vector<std::string>& scalar_names() {
  static const std::vector<std::string> names = {"kinetic_energy", "pressure_deviation",
                                                 "divergence",     "divergence_central4",
                                                 "mass",           "energy",
                                                 "max_mach"};
  return names;
}

const std::vector<std::string>& field_names() {
  static const std::vector<std::string> names = {"vorticity", "mach_ratio", "divergence"};
  return names;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// N of a compute:N reference, 0 when the reference is a path
int computed_reference(const std::string& ref) {
  const std::string prefix = "compute:";
  if (ref.rfind(prefix, 0) != 0) return 0;
  const std::string digits = ref.substr(prefix.size());
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(digits, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != digits.size() || n <= 0) config_error("bad reference '" + ref + "'");
  return n;
}

std::pair<Parity, Parity> parities(const std::string& var) {
  if (var == "qx" || var == "u") return {Parity::odd, Parity::even};
  if (var == "qy" || var == "v") return {Parity::even, Parity::odd};
  return {Parity::even, Parity::even};
}

std::string energy_name(EnergyUpdate e) { return e == EnergyUpdate::flux ? "flux" : "consistent"; }

EnergyUpdate energy_from_string(const std::string& s) {
  if (s == "flux") return EnergyUpdate::flux;
  if (s == "consistent") return EnergyUpdate::consistent;
  config_error("unknown energy update '" + s + "'");
}

json config_json(const RunConfig& c) {
  json j;
  j["problem"] = c.problem;
  j["params"] = c.params;
  j["n"] = c.n;
  j["ny"] = c.ny;
  j["scheme"] = to_string(c.scheme);
  j["variant"] = c.variant ? json(to_string(*c.variant)) : json(nullptr);
  j["eps"] = c.eps;
  j["cfl"] = c.cfl;
  j["t_final"] = c.t_final;
  j["out"] = c.out.string();
  j["snapshot_every"] = c.snapshot_every;
  j["diagnostics"] = c.diagnostics;
  j["fields"] = c.fields;
  j["elliptic_tol"] = c.elliptic_tol;
  j["elliptic_max_iter"] = c.elliptic_max_iter;
  j["energy"] = energy_name(c.energy);
  j["study"] = c.study;
  j["reference"] = c.reference;
  j["reference_scheme"] = c.reference_scheme;
  j["error_variable"] = c.error_variable;
  return j;
}

void write_manifest(const RunConfig& cfg, const ProblemSpec& spec, json summary) {
  json m;
  m["config"] = config_json(cfg);
  m["resolved"] = {{"problem", spec.name},
                   {"gamma", spec.params.gamma},
                   {"eps", spec.params.epsilon},
                   {"t_final", spec.t_final},
                   {"error_variable", spec.error_variable}};
  m["summary"] = std::move(summary);
  std::ofstream os(cfg.out / "manifest.json");
  if (!os) config_error("cannot write " + (cfg.out / "manifest.json").string());
  os << m.dump(2) << '\n';
}

void prepare_output(const RunConfig& cfg) {
  if (cfg.out.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec) config_error("cannot create " + cfg.out.string() + ": " + ec.message());
}

std::string snapshot_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06d.csv", step);
  return buf;
}

}  // namespace

Scheme scheme_from_string(std::string_view name) {
  if (name == "s4t3") return Scheme::s4t3;
  if (name == "s4t3-balanced") return Scheme::s4t3_balanced;
  if (name == "s2t3") return Scheme::s2t3;
  if (name == "first-order") return Scheme::first_order;
  if (name == "weno5rk3") return Scheme::weno5rk3;
  config_error("unknown scheme '" + std::string(name) + "'");
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::s4t3: return "s4t3";
    case Scheme::s4t3_balanced: return "s4t3-balanced";
    case Scheme::s2t3: return "s2t3";
    case Scheme::first_order: return "first-order";
    case Scheme::weno5rk3: return "weno5rk3";
  }
  return "?";
}

Variant variant_from_string(std::string_view name) {
  if (name == "A1" || name == "a1") return Variant::A1;
  if (name == "A2" || name == "a2") return Variant::A2;
  if (name == "A3" || name == "a3") return Variant::A3;
  config_error("unknown variant '" + std::string(name) + "'");
}

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::A1: return "A1";
    case Variant::A2: return "A2";
    case Variant::A3: return "A3";
  }
  return "?";
}

bool is_semi_implicit(Scheme scheme) { return scheme != Scheme::weno5rk3; }

void validate(const RunConfig& cfg) {
  if (!contains(problem_names(), cfg.problem)) config_error("unknown problem '" + cfg.problem + "'");
  if (cfg.n <= 0 && cfg.study.empty()) config_error("--n must be positive");
  if (cfg.ny < 0) config_error("--ny must not be negative");
  if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0)) config_error("cfl must lie in (0, 1)");
  if (cfg.variant && !is_semi_implicit(cfg.scheme))
    config_error("variant " + to_string(*cfg.variant) + " applies only to semi-implicit schemes, not " +
                 to_string(cfg.scheme));
  if (!std::isfinite(cfg.eps) || !std::isfinite(cfg.t_final)) config_error("eps and t_final must be finite");
  if (cfg.snapshot_every < 0) config_error("--snapshot-every must not be negative");
  if (!(cfg.elliptic_tol > 0.0)) config_error("--elliptic-tol must be positive");
  if (cfg.elliptic_max_iter < 0) config_error("--elliptic-max-iter must not be negative");
  for (const auto& d : cfg.diagnostics)
    if (!contains(scalar_names(), d)) config_error("unknown diagnostic '" + d + "'");
  for (const auto& f : cfg.fields)
    if (!contains(field_names(), f)) config_error("unknown field '" + f + "'");
  if (!cfg.error_variable.empty() &&
      !contains({"rho", "qx", "qy", "E", "p", "u", "v"}, cfg.error_variable))
    config_error("unknown error variable '" + cfg.error_variable + "'");
  if (!cfg.reference_scheme.empty()) scheme_from_string(cfg.reference_scheme);

  if (!cfg.study.empty()) {
    for (std::size_t k = 0; k < cfg.study.size(); ++k) {
      if (cfg.study[k] <= 0) config_error("study resolutions must be positive");
      if (k > 0 && cfg.study[k] <= cfg.study[k - 1]) config_error("study resolutions must ascend");
    }
    if (cfg.reference.empty()) config_error("a study needs --reference");
    const int nref = computed_reference(cfg.reference);
    if (nref > 0 && nref <= cfg.study.back())
      config_error("reference resolution must exceed the finest study resolution");
    if (nref == 0 && !std::filesystem::exists(cfg.reference))
      config_error("reference file '" + cfg.reference + "' does not exist");
  }
  // throws for bad problem constants
  build_problem(cfg);
}

ProblemSpec build_problem(const RunConfig& cfg) {
  std::set<std::string> used;
  auto get = [&](const std::string& key, double def) {
    const auto it = cfg.params.find(key);
    if (it == cfg.params.end()) return def;
    used.insert(key);
    return it->second;
  };
  const bool given = cfg.eps > 0.0;
  ProblemSpec s;
  if (cfg.problem == "gresho") {
    s = gresho(given ? cfg.eps : 1e-2, get("u_inf", 0.1));
  } else if (cfg.problem == "shear") {
    s = shear_layer(get("delta", 0.05), get("width", std::numbers::pi / 15.0));
    if (given) s.params = EulerParams::make(s.params.gamma, cfg.eps);
  } else if (cfg.problem == "acoustic" || cfg.problem == "acoustic-smooth") {
    const bool smooth = cfg.problem == "acoustic-smooth";
    s = acoustic_pulses(given ? cfg.eps : (smooth ? 10.0 / 11.0 : 1.0 / 11.0), smooth,
                        get("gamma", 1.4));
  } else {
    s = problem_by_name(cfg.problem, cfg.eps);
  }
  for (const auto& [key, value] : cfg.params)
    if (!used.count(key))
      config_error("problem '" + cfg.problem + "' has no constant '" + key + "'");
  if (cfg.t_final > 0.0) s.t_final = cfg.t_final;
  if (!cfg.error_variable.empty()) s.error_variable = cfg.error_variable;
  return s;
}

SpatialBundle variant_dispatch(Variant variant, const EulerParams& base, Reconstruction recon) {
  SpatialBundle b;
  b.params = base;
  b.options.recon = recon;
  switch (variant) {
    case Variant::A1:
      b.options.explicit_treatment = FluxTreatment::characteristic;
      break;
    case Variant::A2:
      b.options.explicit_treatment = FluxTreatment::componentwise;
      break;
    case Variant::A3:
      b.params = EulerParams::with_alpha(base.gamma, base.epsilon, 0.0);
      b.options.explicit_treatment = FluxTreatment::componentwise;
      break;
  }
  return b;
}

std::unique_ptr<TimeIntegrator> make_integrator(const RunConfig& cfg, const ProblemSpec& spec,
                                                const Grid& grid) {
  if (cfg.scheme == Scheme::weno5rk3)
    return std::make_unique<ExplicitReferenceIntegrator>(grid, spec.params);
  const Reconstruction recon =
      cfg.scheme == Scheme::s2t3 ? Reconstruction::tvd2 : Reconstruction::weno5;
  SpatialBundle b = variant_dispatch(cfg.variant.value_or(Variant::A1), spec.params, recon);
  b.options.energy = cfg.energy;
  b.options.elliptic.tol = cfg.elliptic_tol;
  b.options.elliptic.max_iter = cfg.elliptic_max_iter;
  ButcherPair tableau;
  switch (cfg.scheme) {
    case Scheme::first_order: tableau = tableau_first_order(); break;
    case Scheme::s4t3_balanced: tableau = tableau_si_imex_443_balanced(); break;
    default: tableau = tableau_si_imex_443(); break;
  }
  return std::make_unique<SemiImplicitStepper>(grid, b.params, std::move(tableau), b.options);
}

double scalar_diagnostic(std::string_view name, const ConservedField& u, const Grid& grid,
                         const EulerParams& prm, const ProblemSpec& spec) {
  auto max_abs = [&](const Field& f) {
    double m = 0.0;
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) m = std::max(m, std::abs(f(i, j)));
    return m;
  };
  auto total = [&](const Field& f) {
    double s = 0.0;
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) s += f(i, j);
    return s * grid.cell_volume();
  };
  if (name == "kinetic_energy") return kinetic_energy(u, grid, spec.u_inf);
  if (name == "pressure_deviation") {
    Field p = pressure_from_conserved(u, grid, prm);
    const double mean = total(p) / (grid.cell_volume() * static_cast<double>(grid.cell_count()));
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) p(i, j) -= mean;
    return max_abs(p);
  }
  if (name == "divergence")
    return max_abs(velocity_divergence(u, grid, DivergenceMethod::weno_zero_viscosity));
  if (name == "divergence_central4")
    return max_abs(velocity_divergence(u, grid, DivergenceMethod::central4));
  if (name == "mass") return total(u.rho);
  if (name == "energy") return total(u.en);
  if (name == "max_mach") return max_abs(mach_ratio(u, grid, prm, spec.u_inf));
  config_error("unknown diagnostic '" + std::string(name) + "'");
}

RunResult simulate(const RunConfig& cfg, int n, int ny, const StepObserver& observer) {
  const ProblemSpec spec = build_problem(cfg);
  const Grid grid = spec.grid(n, ny);
  auto integrator = make_integrator(cfg, spec, grid);
  const EulerParams prm = integrator->params();
  const std::vector<std::string> names = cfg.diagnostics.empty() ? spec.diagnostics : cfg.diagnostics;

  RunResult r{grid, prm, spec.initial(grid), 0, 0.0, 0.0, {}};
  auto record = [&](double t, const ConservedField& u) {
    for (const auto& name : names) r.series[name].push_back({t, scalar_diagnostic(name, u, grid, prm, spec)});
  };
  record(0.0, r.u);
  if (observer) observer(0, 0.0, r.u);

  std::vector<StepObserver> observers = {[&](int, double t, const ConservedField& u) { record(t, u); }};
  if (observer) observers.push_back(observer);
  const auto start = std::chrono::steady_clock::now();
  AdvanceResult a = advance(*integrator, std::move(r.u), spec.t_final, cfg.cfl, observers);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.u = std::move(a.u);
  r.steps = a.steps;
  r.t = a.t;
  return r;
}

void write_field(const std::filesystem::path& path, const Field& f, const Grid& grid) {
  std::ofstream os(path);
  if (!os) config_error("cannot write " + path.string());
  os << (grid.dim == 2 ? "x,y,value\n" : "x,value\n");
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      os << format_double(grid.x(i)) << ',';
      if (grid.dim == 2) os << format_double(grid.y(j)) << ',';
      os << format_double(f(i, j)) << '\n';
    }
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const ProblemSpec spec = build_problem(cfg);
  const bool write = !cfg.out.empty();
  prepare_output(cfg);
  std::vector<std::string> outputs;

  StepObserver snapshots;
  if (write && cfg.snapshot_every > 0) {
    const Grid grid = spec.grid(cfg.n, cfg.ny);
    const EulerParams prm = spec.params;
    snapshots = [&, grid, prm](int step, double, const ConservedField& u) {
      if (step % cfg.snapshot_every != 0) return;
      write_snapshot(cfg.out / snapshot_name(step), u, grid, prm);
      outputs.push_back(snapshot_name(step));
    };
  }
  RunResult r = simulate(cfg, cfg.n, cfg.ny, snapshots);
  log << spec.name << " " << to_string(cfg.scheme) << " N=" << r.grid.nx
      << (r.grid.dim == 2 ? "x" + std::to_string(r.grid.ny) : std::string()) << ": " << r.steps
      << " steps to t=" << format_double(r.t) << " in " << r.wall_seconds << " s\n";
  if (!write) return r;

  write_snapshot(cfg.out / "snapshot_final.csv", r.u, r.grid, r.params);
  outputs.push_back("snapshot_final.csv");
  for (const auto& [name, series] : r.series) {
    write_time_series(cfg.out / (name + ".csv"), series);
    outputs.push_back(name + ".csv");
  }
  for (const auto& name : cfg.fields) {
    Field f = name == "vorticity"    ? vorticity(r.u, r.grid)
              : name == "mach_ratio" ? mach_ratio(r.u, r.grid, r.params, spec.u_inf)
                                     : velocity_divergence(r.u, r.grid,
                                                           DivergenceMethod::weno_zero_viscosity);
    write_field(cfg.out / (name + "_final.csv"), f, r.grid);
    outputs.push_back(name + "_final.csv");
  }
  write_manifest(cfg, spec,
                 {{"steps", r.steps},
                  {"t", r.t},
                  {"wall_seconds", r.wall_seconds},
                  {"nx", r.grid.nx},
                  {"ny", r.grid.ny},
                  {"outputs", outputs}});
  return r;
}

std::vector<StudyRow> convergence_study(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (cfg.study.empty()) config_error("no study resolutions given");
  const ProblemSpec spec = build_problem(cfg);
  const std::string var = spec.error_variable;
  const auto [px, py] = parities(var);
  prepare_output(cfg);

  Grid ref_grid;
  Field ref;
  const int nref = computed_reference(cfg.reference);
  if (nref > 0) {
    RunConfig rc = cfg;
    rc.scheme = cfg.reference_scheme.empty() ? cfg.scheme : scheme_from_string(cfg.reference_scheme);
    if (!is_semi_implicit(rc.scheme)) rc.variant.reset();
    const RunResult r = simulate(rc, nref, 0);
    log << "reference " << to_string(rc.scheme) << " N=" << nref << ": " << r.steps << " steps in "
        << r.wall_seconds << " s\n";
    ref_grid = r.grid;
    ref = extract_variable(r.u, r.grid, r.params, var);
  } else {
    const std::size_t rows = snapshot_rows(cfg.reference);
    int n = static_cast<int>(rows);
    if (spec.dim == 2) n = static_cast<int>(std::lround(std::sqrt(rows / spec.aspect)));
    ref_grid = spec.grid(n);
    if (ref_grid.cell_count() != rows)
      throw SolverError(ErrorKind::GridMismatch,
                        "reference " + cfg.reference + " does not match a " + spec.name + " grid");
    ref = extract_variable(read_snapshot(cfg.reference, ref_grid, spec.params), ref_grid,
                           spec.params, var);
  }

  std::vector<StudyRow> rows;
  for (int n : cfg.study) {
    StudyRow row;
    row.n = n;
    row.order = std::numeric_limits<double>::quiet_NaN();
    try {
      const RunResult r = simulate(cfg, n, 0);
      const Field coarse = restrict_to(ref, ref_grid, r.grid, px, py);
      row.error = l1_error(extract_variable(r.u, r.grid, r.params, var), coarse, r.grid);
    } catch (const SolverError& e) {
      row.error = std::numeric_limits<double>::quiet_NaN();
      row.failure = e.what();
    }
    if (!rows.empty() && rows.back().failure.empty() && row.failure.empty())
      row.order = std::log(rows.back().error / row.error) /
                  std::log(static_cast<double>(n) / rows.back().n);
    log << "N=" << n << " " << var << " L1 error " << format_double(row.error) << " order "
        << format_double(row.order) << (row.failure.empty() ? "" : " failed: " + row.failure)
        << '\n';
    rows.push_back(row);
  }

  if (!cfg.out.empty()) {
    write_convergence_table(cfg.out / "convergence.csv", rows);
    json table = json::array();
    for (const auto& r : rows)
      table.push_back({{"n", r.n},
                       {"l1_error", std::isfinite(r.error) ? json(r.error) : json(nullptr)},
                       {"order", std::isfinite(r.order) ? json(r.order) : json(nullptr)},
                       {"failure", r.failure}});
    write_manifest(cfg, spec, {{"study", table}, {"outputs", {"convergence.csv"}}});
  }
  return rows;
}

void write_convergence_table(const std::filesystem::path& path, const std::vector<StudyRow>& rows) {
  std::ofstream os(path);
  if (!os) config_error("cannot write " + path.string());
  os << "N,l1_error,order\n";
  for (const auto& r : rows)
    os << r.n << ',' << format_double(r.error) << ',' << format_double(r.order) << '\n';
}

std::string manifest_config_json(const RunConfig& cfg) { return config_json(cfg).dump(); }

RunConfig config_from_manifest(const std::filesystem::path& manifest) {
  std::ifstream is(manifest);
  if (!is) config_error("cannot read " + manifest.string());
  json m;
  try {
    m = json::parse(is);
    const json& j = m.at("config");
    RunConfig c;
    c.problem = j.at("problem").get<std::string>();
    c.params = j.at("params").get<std::map<std::string, double>>();
    c.n = j.at("n").get<int>();
    c.ny = j.at("ny").get<int>();
    c.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    if (!j.at("variant").is_null()) c.variant = variant_from_string(j.at("variant").get<std::string>());
    c.eps = j.at("eps").get<double>();
    c.cfl = j.at("cfl").get<double>();
    c.t_final = j.at("t_final").get<double>();
    c.out = j.at("out").get<std::string>();
    c.snapshot_every = j.at("snapshot_every").get<int>();
    c.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    c.fields = j.at("fields").get<std::vector<std::string>>();
    c.elliptic_tol = j.at("elliptic_tol").get<double>();
    c.elliptic_max_iter = j.at("elliptic_max_iter").get<int>();
    c.energy = energy_from_string(j.at("energy").get<std::string>());
    c.study = j.at("study").get<std::vector<int>>();
    c.reference = j.at("reference").get<std::string>();
    c.reference_scheme = j.at("reference_scheme").get<std::string>();
    c.error_variable = j.at("error_variable").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    config_error("malformed manifest " + manifest.string() + ": " + e.what());
  }
}

}  // namespace allmach::cli
