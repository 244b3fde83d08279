#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"
#include "allmach/elliptic/helmholtz.hpp"
#include "allmach/imex/tableau.hpp"
#include "allmach/reconstruct/divergence.hpp"

namespace allmach {

/// How the implicit energy of a stage is closed once p2 is known.
///
/// `flux` evaluates div_W(H q_I) with the corrected momentum. `consistent`
/// replaces the pressure part of that divergence by the same discrete
/// operator the pressure equation was solved with, so the stage energy
/// satisfies the equation of state exactly up to O(eps^2) kinetic terms.
enum class EnergyUpdate { flux, consistent };

struct StepperOptions {
  Reconstruction recon = Reconstruction::weno5;
  FluxTreatment explicit_treatment = FluxTreatment::characteristic;
  EnergyUpdate energy = EnergyUpdate::consistent;
  SolveOptions elliptic{};
  bool warm_start = true;
};

/// Per-step record kept by the semi-implicit stepper. Every stage operator
/// evaluation is stored once and reused by all later stages.
struct StageWorkspace {
  std::vector<ConservedField> u_e;      // explicit stage states
  std::vector<ConservedField> u_i;      // implicit stage states
  std::vector<ConservedField> k_ex;     // div_CW of the explicit flux (energy slot zero)
  std::vector<ConservedField> k_im;     // w grad_W p2 (momentum) and div_W(H q_I) (energy)
  std::vector<Field> p_e;               // explicit stage pressure
  std::vector<Field> p_i2;              // hydrodynamic pressure
  std::vector<double> pbar_e;           // mean of p_e
  std::vector<double> lambda;           // splitting speed per stage
  std::vector<SolveReport> solves;      // empty report when the solve was bypassed
};

class TimeIntegrator {
 public:
  virtual ~TimeIntegrator() = default;
  virtual ConservedField step(const ConservedField& un, double dt) = 0;
  virtual double stable_dt(const ConservedField& u, double cfl) const = 0;
  virtual const Grid& grid() const = 0;
  virtual const EulerParams& params() const = 0;
};

/// Semi-implicit IMEX Runge-Kutta stepper for the eps-scaled Euler system.
///
/// The explicit flux (q, q q / rho + alpha p I) goes through div_CW (or div_W
/// when `explicit_treatment` is componentwise); the implicit part couples
/// (1 - alpha eps^2) grad p2 in the momentum with div_W(H q) in the energy,
/// eliminated into one pressure equation per stage. The step returns the last
/// implicit stage, which requires a stiffly accurate tableau.
class SemiImplicitStepper final : public TimeIntegrator {
 public:
  SemiImplicitStepper(const Grid& grid, const EulerParams& params, ButcherPair tableau,
                      StepperOptions options = {});

  ConservedField step(const ConservedField& un, double dt) override;
  double stable_dt(const ConservedField& u, double cfl) const override;
  const Grid& grid() const override { return grid_; }
  const EulerParams& params() const override { return params_; }

  const StageWorkspace& workspace() const { return ws_; }
  const ButcherPair& tableau() const { return tableau_; }
  const StepperOptions& options() const { return options_; }

 private:
  Grid grid_;
  EulerParams params_;
  ButcherPair tableau_;
  StepperOptions options_;
  StageWorkspace ws_;
  Field last_p2_;
};

/// One step of the semi-implicit scheme with a fresh stepper.
ConservedField si_imex_step(const ConservedField& un, double dt, const ButcherPair& tableau,
                            const Grid& grid, const EulerParams& params,
                            const StepperOptions& options = {});

/// Called after every accepted step with the step index (1-based), time and state.
using StepObserver = std::function<void(int step, double t, const ConservedField& u)>;

struct AdvanceResult {
  ConservedField u;
  int steps = 0;
  double t = 0.0;
};

/// Steps from t = 0 to t_final with dt = integrator.stable_dt(u, cfl), the
/// last step clipped to land on t_final. Throws NonFinite with the step index
/// when a step produces non-finite values.
AdvanceResult advance(TimeIntegrator& integrator, ConservedField u0, double t_final, double cfl,
                      const std::vector<StepObserver>& observers = {});

}  // namespace allmach
