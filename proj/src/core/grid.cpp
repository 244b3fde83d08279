#include "allmach/core/grid.hpp"

#include <cmath>
#include <string>

#include "allmach/core/errors.hpp"

namespace allmach {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::NonPositivePressure: return "NonPositivePressure";
    case ErrorKind::InvalidPrimitive: return "InvalidPrimitive";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::ZeroWaveSpeed: return "ZeroWaveSpeed";
    case ErrorKind::InadmissibleAverage: return "InadmissibleAverage";
    case ErrorKind::EllipticSolveFailure: return "EllipticSolveFailure";
    case ErrorKind::SingularOperator: return "SingularOperator";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::VacuumFormation: return "VacuumFormation";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

std::string_view to_string(Boundary bc) {
  switch (bc) {
    case Boundary::periodic: return "periodic";
    case Boundary::reflective: return "reflective";
    case Boundary::outflow: return "outflow";
  }
  return "unknown";
}

Boundary boundary_from_string(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "reflective") return Boundary::reflective;
  if (name == "outflow") return Boundary::outflow;
  throw SolverError(ErrorKind::InvalidConfig, "unknown boundary kind '" + std::string(name) + "'");
}

Grid Grid::line(int nx, double x0, double x1, Boundary bc) {
  if (nx < kGhost) throw SolverError(ErrorKind::InvalidGrid, "need at least 3 cells");
  if (!(x1 > x0)) throw SolverError(ErrorKind::InvalidGrid, "empty domain");
  Grid g;
  g.dim = 1;
  g.nx = nx;
  g.ny = 1;
  g.x0 = x0;
  g.x1 = x1;
  g.dx = (x1 - x0) / nx;
  g.dy = g.dx;
  g.bc_x = bc;
  g.bc_y = Boundary::periodic;
  return g;
}

Grid Grid::plane(int nx, int ny, double x0, double x1, double y0, double y1, Boundary bc_x,
                 Boundary bc_y) {
  if (nx < kGhost || ny < kGhost)
    throw SolverError(ErrorKind::InvalidGrid, "need at least 3 cells per direction");
  if (!(x1 > x0) || !(y1 > y0)) throw SolverError(ErrorKind::InvalidGrid, "empty domain");
  Grid g;
  g.dim = 2;
  g.nx = nx;
  g.ny = ny;
  g.x0 = x0;
  g.x1 = x1;
  g.y0 = y0;
  g.y1 = y1;
  g.dx = (x1 - x0) / nx;
  g.dy = (y1 - y0) / ny;
  g.bc_x = bc_x;
  g.bc_y = bc_y;
  if (std::abs(g.dx - g.dy) > 1e-12 * g.dx)
    throw SolverError(ErrorKind::InvalidGrid, "2D grids must have dx == dy");
  return g;
}

bool Grid::is_closed() const {
  return bc_x != Boundary::outflow && (dim == 1 || bc_y != Boundary::outflow);
}

bool Grid::is_periodic() const {
  return bc_x == Boundary::periodic && (dim == 1 || bc_y == Boundary::periodic);
}

bool Grid::same_shape(const Grid& other) const {
  return dim == other.dim && nx == other.nx && ny == other.ny;
}

}  // namespace allmach
