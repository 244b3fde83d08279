#include "allmach/core/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

void check_params(double gamma, double epsilon) {
  if (!(gamma > 1.0)) throw SolverError(ErrorKind::InvalidConfig, "gamma must exceed 1");
  if (!(epsilon > 0.0)) throw SolverError(ErrorKind::InvalidConfig, "epsilon must be positive");
}

std::string cell_name(int i, int j) {
  std::ostringstream os;
  os << "cell (" << i << ", " << j << ")";
  return os.str();
}

}  // namespace

EulerParams EulerParams::make(double gamma, double epsilon) {
  check_params(gamma, epsilon);
  EulerParams p;
  p.gamma = gamma;
  p.epsilon = epsilon;
  p.alpha = epsilon < 1.0 ? 1.0 : 1.0 / (epsilon * epsilon);
  p.alpha_override = false;
  return p;
}

EulerParams EulerParams::with_alpha(double gamma, double epsilon, double alpha) {
  check_params(gamma, epsilon);
  if (!(alpha >= 0.0)) throw SolverError(ErrorKind::InvalidConfig, "alpha must be >= 0");
  EulerParams p;
  p.gamma = gamma;
  p.epsilon = epsilon;
  p.alpha = alpha;
  p.alpha_override = true;
  return p;
}

double EulerParams::implicit_pressure_weight() const {
  if (!alpha_override && epsilon >= 1.0) return 0.0;
  return 1.0 - alpha * eps2();
}

ConservedState to_conserved(const PrimitiveState& w, const EulerParams& prm) {
  if (!(w.rho > 0.0) || !(w.p > 0.0))
    throw SolverError(ErrorKind::InvalidPrimitive, "density and pressure must be positive");
  ConservedState u;
  u.rho = w.rho;
  u.qx = w.rho * w.u;
  u.qy = w.rho * w.v;
  u.en = w.p / (prm.gamma - 1.0) + 0.5 * prm.eps2() * w.rho * (w.u * w.u + w.v * w.v);
  return u;
}

PrimitiveState to_primitive(const ConservedState& u, const EulerParams& prm) {
  if (!(u.rho > 0.0)) throw SolverError(ErrorKind::NonPositiveDensity, "rho <= 0");
  PrimitiveState w;
  w.rho = u.rho;
  w.u = u.qx / u.rho;
  w.v = u.qy / u.rho;
  w.p = pressure(u.rho, u.qx, u.qy, u.en, prm);
  if (!(w.p > 0.0)) throw SolverError(ErrorKind::NonPositivePressure, "p <= 0");
  return w;
}

double scaled_sound_speed(const PrimitiveState& w, const EulerParams& prm) {
  return std::sqrt(prm.gamma * w.p / w.rho);
}

Field pressure_from_conserved(const ConservedField& u, const Grid& grid, const EulerParams& prm) {
  Field p(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double rho = u.rho(i, j);
      if (!(rho > 0.0)) throw SolverError(ErrorKind::NonPositiveDensity, cell_name(i, j));
      const double pij = pressure(rho, u.qx(i, j), u.qy(i, j), u.en(i, j), prm);
      if (!(pij > 0.0)) throw SolverError(ErrorKind::NonPositivePressure, cell_name(i, j));
      p(i, j) = pij;
    }
  }
  return p;
}

ConservedField conserved_from_primitive(const PrimitiveField& w, const Grid& grid,
                                        const EulerParams& prm) {
  ConservedField u(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const auto c = to_conserved({w.rho(i, j), w.u(i, j), w.v(i, j), w.p(i, j)}, prm);
      u.rho(i, j) = c.rho;
      u.qx(i, j) = c.qx;
      u.qy(i, j) = c.qy;
      u.en(i, j) = c.en;
    }
  }
  return u;
}

PrimitiveField primitive_from_conserved(const ConservedField& u, const Grid& grid,
                                        const EulerParams& prm) {
  PrimitiveField w(grid);
  w.p = pressure_from_conserved(u, grid, prm);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      w.rho(i, j) = u.rho(i, j);
      w.u(i, j) = u.qx(i, j) / u.rho(i, j);
      w.v(i, j) = u.qy(i, j) / u.rho(i, j);
    }
  }
  return w;
}

double max_wave_speed(const ConservedField& u, const Grid& grid, const EulerParams& prm) {
  const double scale = std::min(1.0, 1.0 / prm.epsilon);
  double lambda = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double rho = u.rho(i, j);
      if (!(rho > 0.0)) throw SolverError(ErrorKind::NonPositiveDensity, cell_name(i, j));
      const double p = pressure(rho, u.qx(i, j), u.qy(i, j), u.en(i, j), prm);
      if (!(p > 0.0)) throw SolverError(ErrorKind::NonPositivePressure, cell_name(i, j));
      const double speed = std::abs(u.qx(i, j) / rho) + std::abs(u.qy(i, j) / rho) +
                           scale * std::sqrt(prm.gamma * p / rho);
      lambda = std::max(lambda, speed);
    }
  }
  return lambda;
}

double cfl_dt(const ConservedField& u, const Grid& grid, const EulerParams& prm, double cfl) {
  const double lambda = max_wave_speed(u, grid, prm);
  if (!(lambda > 0.0)) throw SolverError(ErrorKind::ZeroWaveSpeed, "max wave speed is zero");
  return cfl * grid.dx / lambda;
}

void check_admissible(const ConservedField& u, const Grid& grid, const EulerParams& prm,
                      const char* where) {
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double rho = u.rho(i, j);
      const double qx = u.qx(i, j), qy = u.qy(i, j), en = u.en(i, j);
      if (!std::isfinite(rho) || !std::isfinite(qx) || !std::isfinite(qy) || !std::isfinite(en))
        throw SolverError(ErrorKind::NonFinite, std::string(where) + ", " + cell_name(i, j));
      if (!(rho > 0.0))
        throw SolverError(ErrorKind::NonPositiveDensity, std::string(where) + ", " + cell_name(i, j));
      if (!(pressure(rho, qx, qy, en, prm) > 0.0))
        throw SolverError(ErrorKind::NonPositivePressure,
                          std::string(where) + ", " + cell_name(i, j));
    }
  }
}

}  // namespace allmach
