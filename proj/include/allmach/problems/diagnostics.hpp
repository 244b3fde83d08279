#pragma once

#include <string_view>
#include <vector>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"

namespace allmach {

/// Mean over cells of (u - u_inf)^2 + v^2.
double kinetic_energy(const ConservedField& u, const Grid& grid, double u_inf);

/// sqrt(((u - u_inf)^2 + v^2) / (gamma p / rho)).
Field mach_ratio(const ConservedField& u, const Grid& grid, const EulerParams& prm, double u_inf);

/// v_x - u_y by fourth-order central differences (2D only).
Field vorticity(const ConservedField& u, const Grid& grid);

enum class DivergenceMethod { weno_zero_viscosity, central4 };
DivergenceMethod divergence_method_from_string(std::string_view name);

/// u_x + v_y of the velocity field.
Field velocity_divergence(const ConservedField& u, const Grid& grid, DivergenceMethod method);

/// Named scalar field of a state: rho, qx, qy, E, p, u or v.
Field extract_variable(const ConservedField& u, const Grid& grid, const EulerParams& prm,
                       std::string_view name);

/// sum |a - b| * cell volume. Throws GridMismatch for different shapes.
double l1_error(const Field& a, const Field& b, const Grid& grid);

/// log2(e_k / e_{k+1}) for successive entries (mesh halved each time).
std::vector<double> observed_order(const std::vector<double>& errors);
/// log(e_k / e_{k+1}) / log(N_{k+1} / N_k) for general refinements.
std::vector<double> observed_order(const std::vector<double>& errors, const std::vector<int>& ns);

/// Point values of a fine-grid field at the centres of `coarse`, whose cell
/// counts must divide the fine ones. Odd ratios inject; even ratios use the
/// six-point symmetric midpoint interpolant in each direction. Ghosts use
/// the fine grid's boundary rules with the given parities.
Field restrict_to(const Field& fine, const Grid& fine_grid, const Grid& coarse,
                  Parity parity_x = Parity::even, Parity parity_y = Parity::even);

}  // namespace allmach
