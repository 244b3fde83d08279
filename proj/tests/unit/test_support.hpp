#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "allmach/core/errors.hpp"
#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"

namespace testing {

using namespace allmach;

inline ConservedField from_primitive(const Grid& grid, const EulerParams& prm,
                                     const std::function<PrimitiveState(double, double)>& fn) {
  ConservedField u(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const ConservedState c = to_conserved(fn(grid.x(i), grid.y(j)), prm);
      u.rho(i, j) = c.rho;
      u.qx(i, j) = c.qx;
      u.qy(i, j) = c.qy;
      u.en(i, j) = c.en;
    }
  return u;
}

inline ConservedField uniform(const Grid& grid, const EulerParams& prm, PrimitiveState w) {
  return from_primitive(grid, prm, [w](double, double) { return w; });
}

inline Field sample(const Grid& grid, const std::function<double(double, double)>& fn) {
  Field f(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) f(i, j) = fn(grid.x(i), grid.y(j));
  return f;
}

inline double l1_diff(const Field& a, const Field& b, const Grid& grid) {
  double s = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) s += std::abs(a(i, j) - b(i, j));
  return s * grid.cell_volume();
}

inline double max_diff(const Field& a, const Field& b, const Grid& grid) {
  double s = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) s = std::max(s, std::abs(a(i, j) - b(i, j)));
  return s;
}

inline double max_diff(const ConservedField& a, const ConservedField& b, const Grid& grid) {
  double s = 0.0;
  for (int c = 0; c < 4; ++c) s = std::max(s, max_diff(a[c], b[c], grid));
  return s;
}

template <class Fn>
ErrorKind error_kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const SolverError& e) {
    return e.kind();
  }
  return static_cast<ErrorKind>(-1);
}

inline PrimitiveState random_state(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> pos(0.1, 3.0), vel(-2.0, 2.0);
  return {pos(rng), vel(rng), dim == 2 ? vel(rng) : 0.0, pos(rng)};
}

}  // namespace testing
