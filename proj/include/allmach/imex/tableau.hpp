#pragma once

#include <string>
#include <vector>

namespace allmach {

/// Double Butcher tableau of a partitioned IMEX Runge-Kutta scheme with a
/// shared weight vector. Matrices are row-major s x s.
struct ButcherPair {
  int s = 0;
  int order = 0;
  std::vector<double> a_ex;  // strictly lower triangular
  std::vector<double> a_im;  // lower triangular, nonzero diagonal
  std::vector<double> b;
  std::vector<double> c_ex;
  std::vector<double> c_im;

  double ex(int i, int j) const { return a_ex[static_cast<std::size_t>(i) * s + j]; }
  double im(int i, int j) const { return a_im[static_cast<std::size_t>(i) * s + j]; }
};

/// One-stage pair: forward Euler explicit part, backward Euler implicit part.
ButcherPair tableau_first_order();

/// Four-stage, third-order, stiffly accurate pair with invertible implicit
/// matrix and c_i = c~_i for i >= 2.
ButcherPair tableau_si_imex_443();

/// tableau_si_imex_443 with the first two entries of the last explicit row
/// re-solved so that sum_i b_i a~_i1 = 0. With the printed row the explicit
/// part misses sum b_i a~_ij c~_j = 1/6 by 0.032 and is second order.
ButcherPair tableau_si_imex_443_balanced();

struct TableauCheck {
  std::string name;
  double residual = 0.0;
  bool passed = false;
};

struct TableauReport {
  std::vector<TableauCheck> checks;
  bool passed() const;
  const TableauCheck* find(const std::string& name) const;
};

/// Structural checks (triangularity, invertibility, stiff accuracy, abscissa
/// consistency, c_i = c~_i for i >= 2) plus classical and coupling order
/// conditions up to `target_order` (at most 3), each against `tol`.
TableauReport validate_tableau(const ButcherPair& t, int target_order, double tol = 1e-10);

}  // namespace allmach
