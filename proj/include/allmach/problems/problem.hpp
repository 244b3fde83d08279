#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"

namespace allmach {

/// Initial and boundary data of one test problem.
struct ProblemSpec {
  std::string name;
  int dim = 1;
  EulerParams params;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 0.0;
  Boundary bc_x = Boundary::periodic;
  Boundary bc_y = Boundary::periodic;
  // cells in y per cell in x when only N is given
  double aspect = 1.0;
  std::function<PrimitiveState(double x, double y)> init;
  double t_final = 0.0;
  // background velocity removed by the kinetic-energy and Mach-ratio diagnostics
  double u_inf = 0.0;
  // conserved component compared in convergence studies: rho, qx, qy, E or p
  std::string error_variable = "rho";
  std::vector<std::string> diagnostics;
  std::map<std::string, double> constants;

  /// Grid with n cells in x; ny <= 0 derives ny from `aspect`.
  Grid grid(int n, int ny = 0) const;
  /// Point values of `init` at the cell centres, converted to conserved form.
  ConservedField initial(const Grid& g) const;
};

/// Colliding acoustic pulses on [-L, L], L = 2/eps. With `smooth_velocity`
/// the velocity is u0 sin(2 pi x/L)(1 - cos(2 pi x/L))/2.
ProblemSpec acoustic_pulses(double eps, bool smooth_velocity, double gamma = 1.4);

ProblemSpec sod();
ProblemSpec lax();

/// Smooth periodic 2D data with p = rho^gamma.
ProblemSpec accuracy2d(double eps, double gamma = 1.4);

/// Four-quadrant Riemann problems; config 3 (four shocks) or 5 (four contacts).
ProblemSpec riemann2d(int config);

/// Travelling Gresho vortex, one rotation period t_final = R pi.
ProblemSpec gresho(double eps, double u_inf = 0.1, double gamma = 1.4);

/// Gresho pressure perturbation p2(r) with p = p_inf + eps^2 p2.
double gresho_p2(double r, double radius);
/// Gresho angular velocity profile.
double gresho_u_theta(double r, double radius);

/// Double shear layer on [0, 2pi]^2 at eps = 1e-6.
ProblemSpec shear_layer(double delta = 0.05, double width = 3.14159265358979323846 / 15.0);
/// Kelvin-Helmholtz roll-up on [0, 4pi] x [0, 2pi] at eps = 1e-6.
ProblemSpec kelvin_helmholtz();

/// Builder lookup for the command line. `eps` <= 0 keeps the default.
ProblemSpec problem_by_name(const std::string& name, double eps = 0.0);
std::vector<std::string> problem_names();

}  // namespace allmach
