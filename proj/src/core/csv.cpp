#include "allmach/core/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "allmach/core/errors.hpp"

namespace allmach {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshot(std::ostream& os, const ConservedField& u, const Grid& grid,
                    const EulerParams& prm) {
  const bool two_d = grid.dim == 2;
  os << (two_d ? "x,y,rho,u,v,p,E\n" : "x,rho,u,p,E\n");
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double rho = u.rho(i, j);
      const double p = pressure(rho, u.qx(i, j), u.qy(i, j), u.en(i, j), prm);
      os << format_double(grid.x(i)) << ',';
      if (two_d) os << format_double(grid.y(j)) << ',';
      os << format_double(rho) << ',' << format_double(u.qx(i, j) / rho) << ',';
      if (two_d) os << format_double(u.qy(i, j) / rho) << ',';
      os << format_double(p) << ',' << format_double(u.en(i, j)) << '\n';
    }
  }
}

void write_snapshot(const std::filesystem::path& path, const ConservedField& u, const Grid& grid,
                    const EulerParams& prm) {
  std::ofstream os(path);
  if (!os) throw SolverError(ErrorKind::InvalidConfig, "cannot write " + path.string());
  write_snapshot(os, u, grid, prm);
}

std::size_t snapshot_rows(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw SolverError(ErrorKind::InvalidConfig, "cannot read " + path.string());
  std::string line;
  std::size_t rows = 0;
  std::getline(is, line);  // header
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  return rows;
}

ConservedField read_snapshot(const std::filesystem::path& path, const Grid& grid,
                             const EulerParams& prm) {
  std::ifstream is(path);
  if (!is) throw SolverError(ErrorKind::InvalidConfig, "cannot read " + path.string());
  const bool two_d = grid.dim == 2;
  const std::size_t ncols = two_d ? 7 : 5;
  std::string line;
  std::getline(is, line);
  ConservedField u(grid);
  std::size_t row = 0;
  std::vector<double> vals(ncols);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= grid.cell_count())
      throw SolverError(ErrorKind::GridMismatch, path.string() + " has more rows than the grid");
    std::stringstream ss(line);
    std::string cell;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (!std::getline(ss, cell, ','))
        throw SolverError(ErrorKind::InvalidConfig, "short row in " + path.string());
      vals[c] = std::stod(cell);
    }
    const int i = static_cast<int>(row % grid.nx);
    const int j = static_cast<int>(row / grid.nx);
    const double tol = 1e-9 * grid.dx;
    if (std::abs(vals[0] - grid.x(i)) > tol || (two_d && std::abs(vals[1] - grid.y(j)) > tol))
      throw SolverError(ErrorKind::GridMismatch, "coordinates in " + path.string() +
                                                     " do not match the grid");
    PrimitiveState w;
    if (two_d) {
      w = {vals[2], vals[3], vals[4], vals[5]};
    } else {
      w = {vals[1], vals[2], 0.0, vals[3]};
    }
    const auto c = to_conserved(w, prm);
    u.rho(i, j) = c.rho;
    u.qx(i, j) = c.qx;
    u.qy(i, j) = c.qy;
    // E is stored explicitly; prefer it over the EOS to keep the round trip exact
    u.en(i, j) = vals[ncols - 1];
    ++row;
  }
  if (row != grid.cell_count())
    throw SolverError(ErrorKind::GridMismatch, path.string() + " has fewer rows than the grid");
  return u;
}

void write_time_series(const std::filesystem::path& path,
                       const std::vector<std::pair<double, double>>& series) {
  std::ofstream os(path);
  if (!os) throw SolverError(ErrorKind::InvalidConfig, "cannot write " + path.string());
  os << "t,value\n";
  for (const auto& [t, v] : series) os << format_double(t) << ',' << format_double(v) << '\n';
}

}  // namespace allmach
