#pragma once

#include <span>
#include <utility>
#include <vector>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"
#include "allmach/reconstruct/weno.hpp"

namespace allmach {

/// F+ and F- of a global Lax-Friedrichs split, F+- = (F +- lambda U)/2.
struct SplitFluxPair {
  std::vector<double> plus;
  std::vector<double> minus;
};

SplitFluxPair lax_friedrichs_split(std::span<const double> flux, std::span<const double> state,
                                   double lambda);

/// How the explicit flux is reconstructed: projected onto local
/// characteristic fields, or one conserved component at a time.
enum class FluxTreatment { characteristic, componentwise };

/// Divergence of the explicit flux F_E = (q, q (x) q / rho + alpha p I, 0).
///
/// `u` and `p` must have their ghost cells filled. The split uses the full
/// state (rho, q, E) with speed `lambda`, and characteristic projection uses
/// the eps = 1 Euler eigensystem at the arithmetic mean of the two adjacent
/// primitive states. The returned energy component holds only the numerical
/// dissipation carried by the split; callers that follow the explicit flux
/// exactly discard it.
ConservedField div_explicit_flux(const ConservedField& u, const Field& p, const Grid& grid,
                                 double alpha, double lambda, double gamma, Reconstruction recon,
                                 FluxTreatment treatment);

/// Characteristic-wise variant of `div_explicit_flux`.
ConservedField div_cw(const ConservedField& u, const Field& p, const Grid& grid, double alpha,
                      double lambda, double gamma, Reconstruction recon = Reconstruction::weno5);

/// Component-wise divergence of the scalar flux (fx, fy), split against
/// `state` with speed `lambda`; lambda = 0 gives the central, zero-viscosity
/// variant (and `state` is ignored). Ghosts of every input must be filled.
/// `fy` is ignored on 1D grids.
Field div_w(const Field& fx, const Field& fy, const Field& state, const Grid& grid,
            double lambda, Reconstruction recon = Reconstruction::weno5);

/// Gradient of a ghost-filled scalar by zero-viscosity component-wise
/// reconstruction of p in each direction. The second entry is empty in 1D.
std::pair<Field, Field> grad_w(const Field& p, const Grid& grid,
                               Reconstruction recon = Reconstruction::weno5);

/// Elementwise product over the full storage, ghosts included.
Field product(const Field& a, const Field& b);

}  // namespace allmach
