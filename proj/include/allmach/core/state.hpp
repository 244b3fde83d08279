#pragma once

#include <cmath>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"

namespace allmach {

/// Nondimensional parameters of the Euler system.
///
/// `alpha` splits the pressure between the explicit and the implicit flux.
/// The default rule is alpha = 1 for epsilon < 1 and alpha = 1/epsilon^2 for
/// epsilon >= 1; `with_alpha` bypasses the rule (alpha = 0 disables the
/// explicit pressure entirely).
struct EulerParams {
  double gamma = 1.4;
  double epsilon = 1.0;
  double alpha = 1.0;
  bool alpha_override = false;

  static EulerParams make(double gamma, double epsilon);
  static EulerParams with_alpha(double gamma, double epsilon, double alpha);

  /// Coefficient (1 - alpha eps^2) of the implicit pressure gradient. Exactly
  /// zero when alpha follows the rule and epsilon >= 1.
  double implicit_pressure_weight() const;

  double eps2() const { return epsilon * epsilon; }
};

struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;
};

struct ConservedState {
  double rho = 1.0;
  double qx = 0.0;
  double qy = 0.0;
  double en = 0.0;
};

// Pointwise equation of state: E = p/(gamma-1) + eps^2 rho |u|^2 / 2.
inline double pressure(double rho, double qx, double qy, double en, const EulerParams& prm) {
  return (prm.gamma - 1.0) * (en - 0.5 * prm.eps2() * (qx * qx + qy * qy) / rho);
}

ConservedState to_conserved(const PrimitiveState& w, const EulerParams& prm);
PrimitiveState to_primitive(const ConservedState& u, const EulerParams& prm);

/// Scaled sound speed c_s = sqrt(gamma p / rho); the physical one is c_s/eps.
double scaled_sound_speed(const PrimitiveState& w, const EulerParams& prm);

/// p = (gamma-1)(E - eps^2 |q|^2 / (2 rho)) on every interior cell.
/// Throws NonPositiveDensity / NonPositivePressure on inadmissible cells.
Field pressure_from_conserved(const ConservedField& u, const Grid& grid,
                              const EulerParams& prm);

ConservedField conserved_from_primitive(const PrimitiveField& w, const Grid& grid,
                                        const EulerParams& prm);
PrimitiveField primitive_from_conserved(const ConservedField& u, const Grid& grid,
                                        const EulerParams& prm);

/// Global splitting speed max(|u| + |v| + min(1, 1/eps) c_s). In 1D the |v|
/// term is absent (v is identically zero).
double max_wave_speed(const ConservedField& u, const Grid& grid, const EulerParams& prm);

/// dt = cfl * dx / Lambda. Throws ZeroWaveSpeed when Lambda == 0.
double cfl_dt(const ConservedField& u, const Grid& grid, const EulerParams& prm, double cfl);

/// Throws unless every interior cell has rho > 0, p > 0 and finite values.
void check_admissible(const ConservedField& u, const Grid& grid, const EulerParams& prm,
                      const char* where);

}  // namespace allmach
