#include "allmach/problems/problem.hpp"

#include <cmath>
#include <numbers>

#include "allmach/core/errors.hpp"

namespace allmach {

using std::numbers::pi;

Grid ProblemSpec::grid(int n, int ny) const {
  if (dim == 1) return Grid::line(n, x0, x1, bc_x);
  if (ny <= 0) ny = static_cast<int>(std::lround(aspect * n));
  return Grid::plane(n, ny, x0, x1, y0, y1, bc_x, bc_y);
}

ConservedField ProblemSpec::initial(const Grid& g) const {
  PrimitiveField w(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const PrimitiveState s = init(g.x(i), g.y(j));
      w.rho(i, j) = s.rho;
      w.u(i, j) = s.u;
      w.v(i, j) = g.dim == 2 ? s.v : 0.0;
      w.p(i, j) = s.p;
    }
  ConservedField u = conserved_from_primitive(w, g, params);
  check_admissible(u, g, params, name.c_str());
  return u;
}

ProblemSpec acoustic_pulses(double eps, bool smooth_velocity, double gamma) {
  if (!(eps > 0.0)) throw SolverError(ErrorKind::InvalidConfig, "eps must be positive");
  ProblemSpec s;
  s.name = smooth_velocity ? "acoustic-smooth" : "acoustic";
  s.params = EulerParams::make(gamma, eps);
  const double L = 2.0 / eps;
  const double rho0 = 0.955, rho1 = 2.0, u0 = 2.0 * std::sqrt(gamma), p0 = 1.0, p1 = 2.0 * gamma;
  s.x0 = -L;
  s.x1 = L;
  s.constants = {{"L", L}, {"rho0", rho0}, {"rho1", rho1}, {"u0", u0}, {"p0", p0}, {"p1", p1}};
  s.init = [=](double x, double) {
    const double bump = 1.0 - std::cos(2.0 * pi * x / L);
    const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    const double u = smooth_velocity ? u0 * std::sin(2.0 * pi * x / L) * bump / 2.0
                                     : 0.5 * u0 * sign * bump;
    return PrimitiveState{rho0 + 0.5 * eps * rho1 * bump, u, 0.0, p0 + 0.5 * eps * p1 * bump};
  };
  s.t_final = smooth_velocity ? 0.1 : 1.63;
  s.error_variable = "p";
  return s;
}

namespace {

ProblemSpec shock_tube(const char* name, PrimitiveState left, PrimitiveState right, double t) {
  ProblemSpec s;
  s.name = name;
  s.params = EulerParams::make(1.4, 1.0);
  s.bc_x = Boundary::reflective;
  s.init = [=](double x, double) { return x < 0.5 ? left : right; };
  s.t_final = t;
  s.error_variable = "rho";
  s.constants = {{"x_jump", 0.5}};
  return s;
}

}  // namespace

ProblemSpec sod() { return shock_tube("sod", {1.0, 0.0, 0.0, 1.0}, {0.125, 0.0, 0.0, 0.1}, 0.2); }

ProblemSpec lax() {
  return shock_tube("lax", {0.445, 0.698, 0.0, 3.528}, {0.5, 0.0, 0.0, 0.571}, 0.16);
}

ProblemSpec accuracy2d(double eps, double gamma) {
  if (!(eps > 0.0)) throw SolverError(ErrorKind::InvalidConfig, "eps must be positive");
  ProblemSpec s;
  s.name = "accuracy2d";
  s.dim = 2;
  s.params = EulerParams::make(gamma, eps);
  s.y1 = 1.0;
  const double e2 = eps * eps;
  s.init = [=](double x, double y) {
    const double sp = std::sin(2.0 * pi * (x + y)), cp = std::cos(2.0 * pi * (x + y));
    const double sm = std::sin(2.0 * pi * (x - y));
    const double rho = 1.0 + e2 * sp * sp;
    return PrimitiveState{rho, (sm + e2 * sp) / rho, (sm + e2 * cp) / rho, std::pow(rho, gamma)};
  };
  s.t_final = 0.02;
  s.error_variable = "qy";
  return s;
}

ProblemSpec riemann2d(int config) {
  ProblemSpec s;
  s.dim = 2;
  s.params = EulerParams::make(1.4, 1.0);
  s.x0 = s.y0 = -1.0;
  s.x1 = s.y1 = 1.0;
  s.bc_x = s.bc_y = Boundary::outflow;
  PrimitiveState ne, nw, sw, se;
  double split = 0.0;
  if (config == 3) {
    s.name = "riemann2d-3";
    split = 0.8;
    ne = {1.5, 0.0, 0.0, 1.5};
    nw = {0.5323, 1.206, 0.0, 0.3};
    sw = {0.138, 1.206, 1.206, 0.029};
    se = {0.5323, 0.0, 1.206, 0.3};
    s.t_final = 0.8;
  } else if (config == 5) {
    s.name = "riemann2d-5";
    split = 0.5;
    ne = {1.0, -0.75, -0.5, 1.0};
    nw = {2.0, -0.75, 0.5, 1.0};
    sw = {1.0, 0.75, 0.5, 1.0};
    se = {3.0, 0.75, -0.5, 1.0};
    s.t_final = 0.23;
  } else {
    throw SolverError(ErrorKind::InvalidConfig,
                      "2D Riemann configuration must be 3 or 5, got " + std::to_string(config));
  }
  s.constants = {{"split", split}, {"config", config}};
  s.init = [=](double x, double y) {
    if (y >= split) return x >= split ? ne : nw;
    return x >= split ? se : sw;
  };
  s.error_variable = "rho";
  return s;
}

double gresho_u_theta(double r, double radius) {
  if (r < 0.5 * radius) return 2.0 * r / radius;
  if (r < radius) return 2.0 * (1.0 - r / radius);
  return 0.0;
}

double gresho_p2(double r, double radius) {
  const double s = r / radius;
  if (s < 0.5) return 2.0 * s * s + 2.0 - std::log(16.0);
  // sign of the logarithm chosen so that dp/dr = u_theta^2 / r and p is continuous
  if (s < 1.0) return 2.0 * s * s - 4.0 * (2.0 * s - std::log(s)) + 6.0;
  return 0.0;
}

ProblemSpec gresho(double eps, double u_inf, double gamma) {
  if (!(eps > 0.0)) throw SolverError(ErrorKind::InvalidConfig, "eps must be positive");
  ProblemSpec s;
  s.name = "gresho";
  s.dim = 2;
  s.params = EulerParams::make(gamma, eps);
  s.y1 = 1.0;
  const double xc = 0.5, yc = 0.5, R = 0.4, e2 = eps * eps;
  s.u_inf = u_inf;
  s.constants = {{"x0", xc}, {"y0", yc}, {"R", R}, {"p_inf", 1.0}, {"rho_inf", 1.0}};
  s.init = [=](double x, double y) {
    const double dx = x - xc, dy = y - yc;
    const double r = std::hypot(dx, dy);
    double u = u_inf, v = 0.0;
    if (r > 0.0) {
      const double ut = gresho_u_theta(r, R);
      u -= dy / r * ut;
      v = dx / r * ut;
    }
    return PrimitiveState{1.0, u, v, 1.0 + e2 * gresho_p2(r, R)};
  };
  s.t_final = R * pi;
  s.diagnostics = {"kinetic_energy", "pressure_deviation"};
  return s;
}

ProblemSpec shear_layer(double delta, double width) {
  ProblemSpec s;
  s.name = "shear";
  s.dim = 2;
  s.params = EulerParams::make(1.4, 1e-6);
  s.x1 = s.y1 = 2.0 * pi;
  s.constants = {{"delta", delta}, {"width", width}};
  s.init = [=](double x, double y) {
    const double u = y <= pi ? std::tanh((y - pi / 2.0) / width) : std::tanh((1.5 * pi - y) / width);
    return PrimitiveState{1.0, u, delta * std::cos(x), 1.0};
  };
  s.t_final = 6.0;
  s.diagnostics = {"divergence", "divergence_central4"};
  return s;
}

ProblemSpec kelvin_helmholtz() {
  ProblemSpec s;
  s.name = "kh";
  s.dim = 2;
  s.params = EulerParams::make(1.4, 1e-6);
  s.x1 = 4.0 * pi;
  s.y1 = 2.0 * pi;
  s.aspect = 0.5;
  s.init = [](double x, double y) {
    return PrimitiveState{1.0, std::cos(y), 0.03 * std::sin(0.5 * x), 1.0};
  };
  s.t_final = 40.0;
  s.diagnostics = {"divergence", "divergence_central4"};
  return s;
}

std::vector<std::string> problem_names() {
  return {"acoustic", "acoustic-smooth", "sod",   "lax",   "accuracy2d",
          "riemann2d-3", "riemann2d-5", "gresho", "shear", "kh"};
}

ProblemSpec problem_by_name(const std::string& name, double eps) {
  const bool given = eps > 0.0;
  auto fixed = [&](ProblemSpec s) {
    if (given) s.params = EulerParams::make(s.params.gamma, eps);
    return s;
  };
  if (name == "acoustic") return acoustic_pulses(given ? eps : 1.0 / 11.0, false);
  if (name == "acoustic-smooth") return acoustic_pulses(given ? eps : 10.0 / 11.0, true);
  if (name == "sod") return fixed(sod());
  if (name == "lax") return fixed(lax());
  if (name == "accuracy2d") return accuracy2d(given ? eps : 1.0);
  if (name == "riemann2d-3") return fixed(riemann2d(3));
  if (name == "riemann2d-5") return fixed(riemann2d(5));
  if (name == "gresho") return gresho(given ? eps : 1e-2);
  if (name == "shear") return fixed(shear_layer());
  if (name == "kh") return fixed(kelvin_helmholtz());
  throw SolverError(ErrorKind::InvalidConfig, "unknown problem '" + name + "'");
}

}  // namespace allmach
