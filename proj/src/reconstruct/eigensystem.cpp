#include "allmach/reconstruct/eigensystem.hpp"

#include <cmath>

#include "allmach/core/errors.hpp"

namespace allmach {

EigenSystem euler_eigensystem(const PrimitiveState& avg, int direction, double gamma, int dim) {
  if (!(avg.rho > 0.0) || !(avg.p > 0.0))
    throw SolverError(ErrorKind::InadmissibleAverage, "averaging state has rho or p <= 0");

  const double c = std::sqrt(gamma * avg.p / avg.rho);
  const double un = direction == 0 ? avg.u : avg.v;
  const double ut = dim == 2 ? (direction == 0 ? avg.v : avg.u) : 0.0;
  const double ke = 0.5 * (un * un + ut * ut);
  const double h = c * c / (gamma - 1.0) + ke;
  const double b1 = (gamma - 1.0) / (c * c);
  const double b2 = b1 * ke;

  EigenSystem es;
  if (dim == 1) {
    es.n = 3;
    const double rr[9] = {1.0,        1.0, 1.0,          //
                          un - c,     un,  un + c,       //
                          h - un * c, ke,  h + un * c};
    const double ll[9] = {0.5 * (b2 + un / c), 0.5 * (-b1 * un - 1.0 / c), 0.5 * b1,  //
                          1.0 - b2,            b1 * un,                    -b1,       //
                          0.5 * (b2 - un / c), 0.5 * (-b1 * un + 1.0 / c), 0.5 * b1};
    for (int k = 0; k < 9; ++k) {
      es.right[k] = rr[k];
      es.left[k] = ll[k];
    }
    es.speeds = {un - c, un, un + c, 0.0};
    return es;
  }

  // rotated frame (rho, q_n, q_t, E)
  const double rr[16] = {1.0,        1.0, 0.0, 1.0,          //
                         un - c,     un,  0.0, un + c,       //
                         ut,         ut,  1.0, ut,           //
                         h - un * c, ke,  ut,  h + un * c};
  const double ll[16] = {
      0.5 * (b2 + un / c), 0.5 * (-b1 * un - 1.0 / c), -0.5 * b1 * ut, 0.5 * b1,  //
      1.0 - b2,            b1 * un,                    b1 * ut,        -b1,       //
      -ut,                 0.0,                        1.0,            0.0,       //
      0.5 * (b2 - un / c), 0.5 * (-b1 * un + 1.0 / c), -0.5 * b1 * ut, 0.5 * b1};
  const int perm[4] = {0, direction == 0 ? 1 : 2, direction == 0 ? 2 : 1, 3};
  es.n = 4;
  for (int k = 0; k < 4; ++k) {
    for (int m = 0; m < 4; ++m) {
      es.right[perm[k] * 4 + m] = rr[k * 4 + m];
      es.left[m * 4 + perm[k]] = ll[m * 4 + k];
    }
  }
  es.speeds = {un - c, un, un, un + c};
  return es;
}

std::array<double, 4> euler_flux(const std::array<double, 4>& u, int direction, double gamma,
                                 int dim) {
  std::array<double, 4> f{};
  if (dim == 1) {
    const double rho = u[0], q = u[1], en = u[2];
    const double vel = q / rho;
    const double p = (gamma - 1.0) * (en - 0.5 * q * q / rho);
    f = {q, q * vel + p, (en + p) * vel, 0.0};
    return f;
  }
  const double rho = u[0], qx = u[1], qy = u[2], en = u[3];
  const double p = (gamma - 1.0) * (en - 0.5 * (qx * qx + qy * qy) / rho);
  const double vn = (direction == 0 ? qx : qy) / rho;
  f[0] = rho * vn;
  f[1] = qx * vn + (direction == 0 ? p : 0.0);
  f[2] = qy * vn + (direction == 1 ? p : 0.0);
  f[3] = (en + p) * vn;
  return f;
}

}  // namespace allmach
