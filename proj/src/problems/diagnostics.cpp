#include "allmach/problems/diagnostics.hpp"

#include <cmath>
#include <string>

#include "allmach/core/errors.hpp"
#include "allmach/reconstruct/divergence.hpp"

namespace allmach {

namespace {

// Ghost-filled velocity components with the reflective parities.
std::pair<Field, Field> velocity(const ConservedField& u, const Grid& grid) {
  Field vx(grid), vy(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      vx(i, j) = u.qx(i, j) / u.rho(i, j);
      vy(i, j) = u.qy(i, j) / u.rho(i, j);
    }
  fill_ghosts(vx, grid, Parity::odd, Parity::even);
  fill_ghosts(vy, grid, Parity::even, Parity::odd);
  return {vx, vy};
}

double central4(const Field& f, int i, int j, int dir, double h) {
  const int di = dir == 0 ? 1 : 0, dj = dir == 1 ? 1 : 0;
  return (-f(i + 2 * di, j + 2 * dj) + 8.0 * f(i + di, j + dj) - 8.0 * f(i - di, j - dj) +
          f(i - 2 * di, j - 2 * dj)) /
         (12.0 * h);
}

void require_same(const Field& a, const Field& b, const Grid& grid) {
  if (a.nx() != b.nx() || a.ny() != b.ny() || a.nx() != grid.nx || a.ny() != grid.ny)
    throw SolverError(ErrorKind::GridMismatch, "fields live on different grids");
}

}  // namespace

double kinetic_energy(const ConservedField& u, const Grid& grid, double u_inf) {
  double sum = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double du = u.qx(i, j) / u.rho(i, j) - u_inf;
      const double v = u.qy(i, j) / u.rho(i, j);
      sum += du * du + v * v;
    }
  return sum / static_cast<double>(grid.cell_count());
}

Field mach_ratio(const ConservedField& u, const Grid& grid, const EulerParams& prm,
                 double u_inf) {
  Field out(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double rho = u.rho(i, j);
      const double du = u.qx(i, j) / rho - u_inf;
      const double v = u.qy(i, j) / rho;
      const double p = pressure(rho, u.qx(i, j), u.qy(i, j), u.en(i, j), prm);
      out(i, j) = std::sqrt((du * du + v * v) / (prm.gamma * p / rho));
    }
  return out;
}

Field vorticity(const ConservedField& u, const Grid& grid) {
  if (grid.dim != 2) throw SolverError(ErrorKind::InvalidConfig, "vorticity needs a 2D grid");
  const auto [vx, vy] = velocity(u, grid);
  Field out(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      out(i, j) = central4(vy, i, j, 0, grid.dx) - central4(vx, i, j, 1, grid.dy);
  return out;
}

DivergenceMethod divergence_method_from_string(std::string_view name) {
  if (name == "weno-zero-visc" || name == "weno") return DivergenceMethod::weno_zero_viscosity;
  if (name == "central4") return DivergenceMethod::central4;
  throw SolverError(ErrorKind::InvalidConfig,
                    "unknown divergence method '" + std::string(name) + "'");
}

Field velocity_divergence(const ConservedField& u, const Grid& grid, DivergenceMethod method) {
  const auto [vx, vy] = velocity(u, grid);
  if (method == DivergenceMethod::weno_zero_viscosity)
    return div_w(vx, grid.dim == 2 ? vy : Field(), Field(), grid, 0.0);
  Field out(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      out(i, j) = central4(vx, i, j, 0, grid.dx);
      if (grid.dim == 2) out(i, j) += central4(vy, i, j, 1, grid.dy);
    }
  return out;
}

Field extract_variable(const ConservedField& u, const Grid& grid, const EulerParams& prm,
                       std::string_view name) {
  if (name == "rho") return u.rho;
  if (name == "qx") return u.qx;
  if (name == "qy") return u.qy;
  if (name == "E") return u.en;
  if (name == "p") return pressure_from_conserved(u, grid, prm);
  if (name == "u" || name == "v") {
    Field out(grid);
    const Field& q = name == "u" ? u.qx : u.qy;
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) out(i, j) = q(i, j) / u.rho(i, j);
    return out;
  }
  throw SolverError(ErrorKind::InvalidConfig, "unknown variable '" + std::string(name) + "'");
}

double l1_error(const Field& a, const Field& b, const Grid& grid) {
  require_same(a, b, grid);
  double sum = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) sum += std::abs(a(i, j) - b(i, j));
  return sum * grid.cell_volume();
}

std::vector<double> observed_order(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    out.push_back(std::log2(errors[k] / errors[k + 1]));
  return out;
}

std::vector<double> observed_order(const std::vector<double>& errors, const std::vector<int>& ns) {
  if (errors.size() != ns.size())
    throw SolverError(ErrorKind::InvalidConfig, "errors and resolutions differ in length");
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    out.push_back(std::log(errors[k] / errors[k + 1]) /
                  std::log(static_cast<double>(ns[k + 1]) / ns[k]));
  return out;
}

namespace {

// Value of a ghost-filled line at the centre of coarse cell `c` for ratio r.
template <class At>
double sample(At&& at, int c, int r) {
  const int k = r * c + r / 2;
  if (r % 2 == 1) return at(k);
  // midpoint between fine cells k-1 and k
  return (3.0 * (at(k - 3) + at(k + 2)) - 25.0 * (at(k - 2) + at(k + 1)) +
          150.0 * (at(k - 1) + at(k))) /
         256.0;
}

}  // namespace

Field restrict_to(const Field& fine, const Grid& fine_grid, const Grid& coarse, Parity parity_x,
                  Parity parity_y) {
  if (fine_grid.dim != coarse.dim || fine_grid.nx % coarse.nx != 0 ||
      fine_grid.ny % coarse.ny != 0 || fine.nx() != fine_grid.nx || fine.ny() != fine_grid.ny)
    throw SolverError(ErrorKind::GridMismatch,
                      "reference grid is not an integer refinement of the target grid");
  const int rx = fine_grid.nx / coarse.nx, ry = fine_grid.ny / coarse.ny;
  Field f = fine;
  fill_ghosts(f, fine_grid, parity_x, parity_y);

  // x first on every fine row (ghost rows included), then y
  const int gy = fine_grid.ghost_y();
  std::vector<double> rows(static_cast<std::size_t>(coarse.nx) * (fine_grid.ny + 2 * gy));
  auto row_at = [&](int c, int j) -> double& {
    return rows[static_cast<std::size_t>(j + gy) * coarse.nx + c];
  };
  for (int j = -gy; j < fine_grid.ny + gy; ++j)
    for (int c = 0; c < coarse.nx; ++c)
      row_at(c, j) = sample([&](int i) { return f(i, j); }, c, rx);

  Field out(coarse);
  for (int c = 0; c < coarse.nx; ++c)
    for (int d = 0; d < coarse.ny; ++d)
      out(c, d) = coarse.dim == 1 ? row_at(c, 0)
                                  : sample([&](int j) { return row_at(c, j); }, d, ry);
  return out;
}

}  // namespace allmach
