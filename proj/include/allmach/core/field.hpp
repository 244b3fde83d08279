#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "allmach/core/grid.hpp"

namespace allmach {

/// Cell-centred scalar array with a ghost layer, indexed by interior cell
/// coordinates: i in [-gx, nx + gx), j in [-gy, ny + gy).
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, double value = 0.0);

  double& operator()(int i, int j = 0) { return data_[index(i, j)]; }
  double operator()(int i, int j = 0) const { return data_[index(i, j)]; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int gx() const { return gx_; }
  int gy() const { return gy_; }
  bool empty() const { return data_.empty(); }

  // Contiguous row j including its x ghosts; element 0 is cell i = -gx.
  double* row(int j) { return data_.data() + static_cast<std::size_t>(j + gy_) * stride_; }
  const double* row(int j) const {
    return data_.data() + static_cast<std::size_t>(j + gy_) * stride_;
  }
  std::size_t stride() const { return stride_; }

  // Interior values in row-major order (x fastest).
  std::vector<double> interior() const;
  void set_interior(std::span<const double> values);

  void fill(double value);

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + gy_) * stride_ + static_cast<std::size_t>(i + gx_);
  }

  int nx_ = 0, ny_ = 0, gx_ = 0, gy_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> data_;
};

/// Behaviour of a quantity under mirror reflection across a wall normal to a
/// direction: normal velocity/momentum components are odd, everything else even.
enum class Parity { even, odd };

void fill_ghosts(Field& f, const Grid& grid, Parity parity_x = Parity::even,
                 Parity parity_y = Parity::even);

/// Interior-cell reductions and elementwise helpers.
double interior_sum(const Field& f);
double interior_mean(const Field& f);
double interior_max_abs(const Field& f);
bool interior_finite(const Field& f);

// y <- y + a * x over the interior
void axpy(Field& y, double a, const Field& x);

/// (rho, q_x, q_y, E) on a grid. In 1D q_y is carried and stays zero.
struct ConservedField {
  Field rho, qx, qy, en;

  ConservedField() = default;
  explicit ConservedField(const Grid& grid)
      : rho(grid), qx(grid), qy(grid), en(grid) {}

  Field& operator[](int c) { return c == 0 ? rho : c == 1 ? qx : c == 2 ? qy : en; }
  const Field& operator[](int c) const {
    return c == 0 ? rho : c == 1 ? qx : c == 2 ? qy : en;
  }
};

void fill_ghosts(ConservedField& u, const Grid& grid);

// y <- y + a * x, componentwise over the interior
void axpy(ConservedField& y, double a, const ConservedField& x);

/// Primitive variables (rho, u, v, p) on a grid.
struct PrimitiveField {
  Field rho, u, v, p;

  PrimitiveField() = default;
  explicit PrimitiveField(const Grid& grid) : rho(grid), u(grid), v(grid), p(grid) {}
};

}  // namespace allmach
