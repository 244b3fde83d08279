#pragma once

#include <cstddef>
#include <string_view>

namespace allmach {

/// Ghost layer width on every side of a direction that is discretized.
/// WENO5 needs three cells beyond the last interface.
inline constexpr int kGhost = 3;

enum class Boundary { periodic, reflective, outflow };

std::string_view to_string(Boundary bc);
Boundary boundary_from_string(std::string_view name);

/// Uniform cell-centred Cartesian grid in one or two dimensions.
///
/// Grid points sit at cell centres, x_i = x0 + (i + 1/2) dx. In 2D the mesh is
/// square (dx == dy). A 1D grid has ny == 1 and carries no ghost layer in y.
struct Grid {
  int dim = 1;
  int nx = 0;
  int ny = 1;
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 0.0;
  double dx = 0.0, dy = 0.0;
  Boundary bc_x = Boundary::periodic;
  Boundary bc_y = Boundary::periodic;

  static Grid line(int nx, double x0, double x1, Boundary bc);
  static Grid plane(int nx, int ny, double x0, double x1, double y0, double y1,
                    Boundary bc_x, Boundary bc_y);

  double x(int i) const { return x0 + (i + 0.5) * dx; }
  double y(int j) const { return dim == 2 ? y0 + (j + 0.5) * dy : 0.0; }

  int ghost_x() const { return kGhost; }
  int ghost_y() const { return dim == 2 ? kGhost : 0; }

  std::size_t cell_count() const { return static_cast<std::size_t>(nx) * ny; }
  double cell_volume() const { return dim == 2 ? dx * dy : dx; }
  double spacing(int direction) const { return direction == 0 ? dx : dy; }
  Boundary boundary(int direction) const { return direction == 0 ? bc_x : bc_y; }

  // True when no direction uses an outflow closure, i.e. every discrete
  // flux-difference operator telescopes to zero over the domain.
  bool is_closed() const;
  bool is_periodic() const;

  bool same_shape(const Grid& other) const;
};

}  // namespace allmach
