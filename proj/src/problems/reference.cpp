#include "allmach/problems/reference.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "allmach/reconstruct/line_kernels.hpp"

namespace allmach {

namespace {

// Direction-wise max of |u_d| + c/eps.
std::pair<double, double> directional_speeds(const ConservedField& u, const Grid& grid,
                                             const EulerParams& prm) {
  double sx = 0.0, sy = 0.0;
  const double inv_eps = 1.0 / prm.epsilon;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double rho = u.rho(i, j);
      const double vx = u.qx(i, j) / rho, vy = u.qy(i, j) / rho;
      const double p = pressure(rho, u.qx(i, j), u.qy(i, j), u.en(i, j), prm);
      const double c = std::sqrt(prm.gamma * p / rho) * inv_eps;
      sx = std::max(sx, std::abs(vx) + c);
      sy = std::max(sy, std::abs(vy) + c);
    }
  return {sx, sy};
}

}  // namespace

ExplicitReferenceIntegrator::ExplicitReferenceIntegrator(const Grid& grid,
                                                         const EulerParams& params,
                                                         Reconstruction recon)
    : grid_(grid), params_(params), recon_(recon) {}

ConservedField ExplicitReferenceIntegrator::rate(const ConservedField& un) const {
  const double eps2 = params_.eps2(), g = params_.gamma, g1 = g - 1.0;
  ConservedField u = un;
  fill_ghosts(u, grid_);
  // E / eps^2 turns the system into standard Euler
  for (int j = -grid_.ghost_y(); j < grid_.ny + grid_.ghost_y(); ++j)
    for (int i = -grid_.ghost_x(); i < grid_.nx + grid_.ghost_x(); ++i) u.en(i, j) /= eps2;
  const auto [sx, sy] = directional_speeds(un, grid_, params_);

  ConservedField div(grid_);
  if (grid_.dim == 1) {
    auto cell = [&](int i, int j, detail::CellFlux<3>& cf) {
      const double rho = u.rho(i, j), q = u.qx(i, j), e = u.en(i, j);
      const double vel = q / rho;
      const double p = g1 * (e - 0.5 * q * vel);
      cf.flux = {q, q * vel + p, (e + p) * vel};
      cf.state = {rho, q, e};
      cf.prim = {rho, vel, 0.0, p};
    };
    detail::flux_divergence<3, true>(grid_, 0, sx, g, recon_, cell, {&div.rho, &div.qx, &div.en});
  } else {
    for (int dir = 0; dir < 2; ++dir) {
      auto cell = [&](int i, int j, detail::CellFlux<4>& cf) {
        const double rho = u.rho(i, j), qx = u.qx(i, j), qy = u.qy(i, j), e = u.en(i, j);
        const double vx = qx / rho, vy = qy / rho;
        const double p = g1 * (e - 0.5 * (qx * vx + qy * vy));
        const double vn = dir == 0 ? vx : vy;
        cf.flux = {rho * vn, qx * vn + (dir == 0 ? p : 0.0), qy * vn + (dir == 1 ? p : 0.0),
                   (e + p) * vn};
        cf.state = {rho, qx, qy, e};
        cf.prim = {rho, vx, vy, p};
      };
      detail::flux_divergence<4, true>(grid_, dir, dir == 0 ? sx : sy, g, recon_, cell,
                                       {&div.rho, &div.qx, &div.qy, &div.en});
    }
  }
  ConservedField out(grid_);
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) {
      out.rho(i, j) = -div.rho(i, j);
      out.qx(i, j) = -div.qx(i, j);
      out.qy(i, j) = grid_.dim == 2 ? -div.qy(i, j) : 0.0;
      out.en(i, j) = -eps2 * div.en(i, j);
    }
  return out;
}

ConservedField ExplicitReferenceIntegrator::step(const ConservedField& un, double dt) {
  // SSP-RK3
  ConservedField u1 = un;
  axpy(u1, dt, rate(un));
  check_admissible(u1, grid_, params_, "RK stage 1");

  ConservedField u2 = u1;
  axpy(u2, dt, rate(u1));
  for (int c = 0; c < 4; ++c)
    for (int j = 0; j < grid_.ny; ++j)
      for (int i = 0; i < grid_.nx; ++i) u2[c](i, j) = 0.75 * un[c](i, j) + 0.25 * u2[c](i, j);
  check_admissible(u2, grid_, params_, "RK stage 2");

  ConservedField u3 = u2;
  axpy(u3, dt, rate(u2));
  for (int c = 0; c < 4; ++c)
    for (int j = 0; j < grid_.ny; ++j)
      for (int i = 0; i < grid_.nx; ++i)
        u3[c](i, j) = un[c](i, j) / 3.0 + 2.0 / 3.0 * u3[c](i, j);
  check_admissible(u3, grid_, params_, "end of step");
  return u3;
}

double ExplicitReferenceIntegrator::stable_dt(const ConservedField& u, double cfl) const {
  double speed = 0.0;
  const double inv_eps = 1.0 / params_.epsilon;
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) {
      const double rho = u.rho(i, j);
      const double p = pressure(rho, u.qx(i, j), u.qy(i, j), u.en(i, j), params_);
      const double vel = std::abs(u.qx(i, j) / rho) +
                         (grid_.dim == 2 ? std::abs(u.qy(i, j) / rho) : 0.0);
      speed = std::max(speed, vel + std::sqrt(params_.gamma * p / rho) * inv_eps);
    }
  const double h = grid_.dim == 2 ? std::min(grid_.dx, grid_.dy) : grid_.dx;
  return cfl * h / speed;
}

ConservedField reference_weno5rk3(const ProblemSpec& spec, int n, double cfl, int ny) {
  const Grid g = spec.grid(n, ny);
  ExplicitReferenceIntegrator integrator(g, spec.params);
  ConservedField u0 = spec.initial(g);
  const double estimate = spec.t_final / integrator.stable_dt(u0, cfl);
  if (estimate > 1e7)
    std::cerr << "warning: explicit reference needs about " << estimate
              << " steps; consider a larger eps or a coarser grid\n";
  return advance(integrator, std::move(u0), spec.t_final, cfl).u;
}

}  // namespace allmach
