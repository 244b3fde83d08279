#pragma once

#include "allmach/core/state.hpp"

namespace allmach {

struct StarState {
  double p = 0.0;
  double u = 0.0;
  int iterations = 0;
};

/// Pressure and velocity between the nonlinear waves of the 1D Riemann
/// problem (eps = 1). Newton iteration on the pressure function to 1e-12.
/// Throws VacuumFormation when the data generate vacuum.
StarState riemann_star(const PrimitiveState& left, const PrimitiveState& right, double gamma);

/// Self-similar solution sampled at xi = x/t. Only rho, u and p are used.
PrimitiveState exact_riemann(const PrimitiveState& left, const PrimitiveState& right,
                             double gamma, double xi);

}  // namespace allmach
