#pragma once

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"
#include "allmach/imex/stepper.hpp"
#include "allmach/problems/problem.hpp"
#include "allmach/reconstruct/weno.hpp"

namespace allmach {

/// Fully explicit solver for the scaled Euler system: characteristic WENO5
/// with a global Lax-Friedrichs split per direction and SSP-RK3. It works on
/// E/eps^2, which turns the system into standard Euler with pressure p/eps^2
/// and sound speed c/eps.
class ExplicitReferenceIntegrator final : public TimeIntegrator {
 public:
  ExplicitReferenceIntegrator(const Grid& grid, const EulerParams& params,
                              Reconstruction recon = Reconstruction::weno5);

  ConservedField step(const ConservedField& un, double dt) override;
  /// cfl * min(dx, dy) / max(|u| + |v| + c/eps).
  double stable_dt(const ConservedField& u, double cfl) const override;
  const Grid& grid() const override { return grid_; }
  const EulerParams& params() const override { return params_; }

  /// Time derivative of the conserved state, -div F(U).
  ConservedField rate(const ConservedField& u) const;

 private:
  Grid grid_;
  EulerParams params_;
  Reconstruction recon_;
};

/// Solution of `spec` at its t_final on an N (x Ny) grid. Warns on stderr when
/// the estimated step count exceeds 1e7.
ConservedField reference_weno5rk3(const ProblemSpec& spec, int n, double cfl = 0.25, int ny = 0);

}  // namespace allmach
