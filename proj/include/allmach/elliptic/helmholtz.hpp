#pragma once

#include <optional>
#include <span>
#include <vector>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"

namespace allmach {

enum class Gauge { none, zero_mean };

/// How the constant mode is treated: `automatic` selects zero_mean when the
/// mass coefficient drops below kGaugeThreshold on a closed grid.
enum class GaugePolicy { automatic, none, zero_mean };

inline constexpr double kGaugeThreshold = 1e-12;

/// Discrete pressure operator
///
///   Op(p) = mass * p - diff * D(H, p),   D(H, p) ~ div(H grad p),
///
/// where D is a fourth-order conservative flux difference. Per direction the
/// interface gradient is (27 (p_{i+1} - p_i) - (p_{i+2} - p_{i-1})) / (24 h),
/// the interface coefficient is (-H_{i+2} + 9 H_{i+1} + 9 H_i - H_{i-1}) / 16,
/// G = H_{i+1/2} * gradient, and the same staggered fourth-order difference is
/// applied to G, i.e. D_i = (27 (G_{i+1/2} - G_{i-1/2}) - (G_{i+3/2} - G_{i-3/2})) / (24 h).
///
/// Reflective walls close the operator with mirrored ghosts (homogeneous
/// Neumann); periodic directions wrap. On closed grids D annihilates constants
/// and its range has zero mean.
class HelmholtzOperator {
 public:
  HelmholtzOperator(const Grid& grid, double mass_coeff, double diff_coeff, const Field& h,
                    GaugePolicy gauge = GaugePolicy::automatic);

  Field apply(const Field& p2) const;
  // Flat interior vectors, x fastest.
  void apply(std::span<const double> x, std::span<double> y) const;

  /// D(H, p) alone.
  Field diffusion(const Field& p2) const;

  double mass_coeff() const { return mass_; }
  double diff_coeff() const { return diff_; }
  Gauge gauge() const { return gauge_; }
  const Grid& grid() const { return grid_; }
  double mean_h() const { return mean_h_; }

  // Diagonal of Op, used for Jacobi preconditioning.
  std::vector<double> diagonal() const;

 private:
  void diffusion_into(const Field& p, Field& out) const;

  Grid grid_;
  double mass_;
  double diff_;
  Gauge gauge_;
  double mean_h_ = 0.0;
  // interface coefficients per direction; slot (k + 2) holds H_{k+1/2}, k = -2..n
  std::vector<double> hx_, hy_;
  mutable Field scratch_;
  mutable Field dscratch_;
};

struct SolveOptions {
  double tol = 1e-11;
  int max_iter = 0;  // 0: 10 * unknowns^(1/dim)
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Solves Op(p2) = rhs to relative residual `tol` with preconditioned BiCGSTAB.
///
/// On closed grids the constant mode is split off exactly: the mean of p2 is
/// mean(rhs)/mass (or zero under the zero-mean gauge, in which case rhs is
/// shifted to zero mean) and the Krylov iteration runs on zero-mean vectors.
/// Fully periodic grids use an FFT-based constant-coefficient preconditioner,
/// other grids a Jacobi one. diff == 0 reduces to a pointwise division.
///
/// Throws EllipticSolveFailure after max_iter, SingularOperator if mass == 0
/// without a gauge on a closed grid.
Field solve(const HelmholtzOperator& op, const Field& rhs, const SolveOptions& opts = {},
            SolveReport* report = nullptr, const Field* initial_guess = nullptr);

}  // namespace allmach
