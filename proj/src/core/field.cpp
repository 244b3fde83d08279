#include "allmach/core/field.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace allmach {

Field::Field(const Grid& grid, double value)
    : nx_(grid.nx),
      ny_(grid.ny),
      gx_(grid.ghost_x()),
      gy_(grid.ghost_y()),
      stride_(static_cast<std::size_t>(grid.nx + 2 * grid.ghost_x())),
      data_(stride_ * static_cast<std::size_t>(grid.ny + 2 * grid.ghost_y()), value) {}

std::vector<double> Field::interior() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(nx_) * ny_);
  for (int j = 0; j < ny_; ++j) {
    const double* r = row(j) + gx_;
    out.insert(out.end(), r, r + nx_);
  }
  return out;
}

void Field::set_interior(std::span<const double> values) {
  assert(values.size() == static_cast<std::size_t>(nx_) * ny_);
  for (int j = 0; j < ny_; ++j)
    std::copy_n(values.data() + static_cast<std::size_t>(j) * nx_, nx_, row(j) + gx_);
}

void Field::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

namespace {

// Source index of ghost cell `g` (g < 0 or g >= n) for a line of n cells.
int ghost_source(int g, int n, Boundary bc) {
  switch (bc) {
    case Boundary::periodic: return ((g % n) + n) % n;
    case Boundary::reflective: return g < 0 ? -1 - g : 2 * n - 1 - g;
    case Boundary::outflow: return g < 0 ? 0 : n - 1;
  }
  return 0;
}

double ghost_sign(Boundary bc, Parity parity) {
  return bc == Boundary::reflective && parity == Parity::odd ? -1.0 : 1.0;
}

}  // namespace

void fill_ghosts(Field& f, const Grid& grid, Parity parity_x, Parity parity_y) {
  const int nx = f.nx(), ny = f.ny(), gx = f.gx(), gy = f.gy();
  const double sx = ghost_sign(grid.bc_x, parity_x);
  for (int j = 0; j < ny; ++j) {
    for (int k = 1; k <= gx; ++k) {
      f(-k, j) = sx * f(ghost_source(-k, nx, grid.bc_x), j);
      f(nx - 1 + k, j) = sx * f(ghost_source(nx - 1 + k, nx, grid.bc_x), j);
    }
  }
  if (gy == 0) return;
  // y ghosts span the full x range so corners are defined as well
  const double sy = ghost_sign(grid.bc_y, parity_y);
  for (int k = 1; k <= gy; ++k) {
    const int lo = ghost_source(-k, ny, grid.bc_y);
    const int hi = ghost_source(ny - 1 + k, ny, grid.bc_y);
    for (int i = -gx; i < nx + gx; ++i) {
      f(i, -k) = sy * f(i, lo);
      f(i, ny - 1 + k) = sy * f(i, hi);
    }
  }
}

double interior_sum(const Field& f) {
  double s = 0.0;
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) s += f(i, j);
  return s;
}

double interior_mean(const Field& f) {
  return interior_sum(f) / (static_cast<double>(f.nx()) * f.ny());
}

double interior_max_abs(const Field& f) {
  double m = 0.0;
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) m = std::max(m, std::abs(f(i, j)));
  return m;
}

bool interior_finite(const Field& f) {
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i)
      if (!std::isfinite(f(i, j))) return false;
  return true;
}

void axpy(Field& y, double a, const Field& x) {
  for (int j = 0; j < y.ny(); ++j) {
    double* yr = y.row(j) + y.gx();
    const double* xr = x.row(j) + x.gx();
    for (int i = 0; i < y.nx(); ++i) yr[i] += a * xr[i];
  }
}

void fill_ghosts(ConservedField& u, const Grid& grid) {
  fill_ghosts(u.rho, grid);
  fill_ghosts(u.qx, grid, Parity::odd, Parity::even);
  fill_ghosts(u.qy, grid, Parity::even, Parity::odd);
  fill_ghosts(u.en, grid);
}

void axpy(ConservedField& y, double a, const ConservedField& x) {
  for (int c = 0; c < 4; ++c) axpy(y[c], a, x[c]);
}

}  // namespace allmach
