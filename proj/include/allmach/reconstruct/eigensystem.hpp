#pragma once

#include <array>

#include "allmach/core/state.hpp"

namespace allmach {

/// Right/left eigenvectors of the (eps = 1) Euler flux Jacobian in one
/// coordinate direction. Components are ordered (rho, q_x, [q_y,] E); the
/// matrices are n x n row-major with n = 3 in 1D and 4 in 2D.
struct EigenSystem {
  int n = 4;
  std::array<double, 16> right{};  // columns are right eigenvectors
  std::array<double, 16> left{};   // rows are left eigenvectors
  std::array<double, 4> speeds{};

  double r(int row, int col) const { return right[row * n + col]; }
  double l(int row, int col) const { return left[row * n + col]; }
};

/// Eigensystem at the averaging state `avg` (primitive variables) for the
/// direction 0 (x) or 1 (y). Speeds are {u_n - c, u_n, [u_n,] u_n + c} with
/// c = sqrt(gamma p / rho). Throws InadmissibleAverage if rho or p <= 0.
EigenSystem euler_eigensystem(const PrimitiveState& avg, int direction, double gamma, int dim);

/// Flux of the unscaled (eps = 1) Euler system in `direction`, used as the
/// reference for Jacobian checks. `u` holds n conserved components.
std::array<double, 4> euler_flux(const std::array<double, 4>& u, int direction, double gamma,
                                 int dim);

}  // namespace allmach
