#include "allmach/reconstruct/divergence.hpp"

#include <cassert>

#include "allmach/reconstruct/line_kernels.hpp"

namespace allmach {

SplitFluxPair lax_friedrichs_split(std::span<const double> flux, std::span<const double> state,
                                   double lambda) {
  assert(flux.size() == state.size());
  SplitFluxPair out;
  out.plus.resize(flux.size());
  out.minus.resize(flux.size());
  for (std::size_t k = 0; k < flux.size(); ++k) {
    out.plus[k] = 0.5 * (flux[k] + lambda * state[k]);
    out.minus[k] = 0.5 * (flux[k] - lambda * state[k]);
  }
  return out;
}

namespace {

template <bool Characteristic>
void explicit_flux_sweeps(const ConservedField& u, const Field& p, const Grid& grid, double alpha,
                          double lambda, double gamma, Reconstruction recon, ConservedField& out) {
  if (grid.dim == 1) {
    auto cell = [&](int i, int j, detail::CellFlux<3>& cf) {
      const double rho = u.rho(i, j), q = u.qx(i, j), pr = p(i, j);
      const double vel = q / rho;
      cf.flux = {q, q * vel + alpha * pr, 0.0};
      cf.state = {rho, q, u.en(i, j)};
      cf.prim = {rho, vel, 0.0, pr};
    };
    detail::flux_divergence<3, Characteristic>(grid, 0, lambda, gamma, recon, cell,
                                               {&out.rho, &out.qx, &out.en});
    return;
  }
  for (int dir = 0; dir < 2; ++dir) {
    auto cell = [&](int i, int j, detail::CellFlux<4>& cf) {
      const double rho = u.rho(i, j), qx = u.qx(i, j), qy = u.qy(i, j), pr = p(i, j);
      const double vx = qx / rho, vy = qy / rho;
      const double vn = dir == 0 ? vx : vy;
      cf.flux = {rho * vn, qx * vn + (dir == 0 ? alpha * pr : 0.0),
                 qy * vn + (dir == 1 ? alpha * pr : 0.0), 0.0};
      cf.state = {rho, qx, qy, u.en(i, j)};
      cf.prim = {rho, vx, vy, pr};
    };
    detail::flux_divergence<4, Characteristic>(grid, dir, lambda, gamma, recon, cell,
                                               {&out.rho, &out.qx, &out.qy, &out.en});
  }
}

}  // namespace

ConservedField div_explicit_flux(const ConservedField& u, const Field& p, const Grid& grid,
                                 double alpha, double lambda, double gamma, Reconstruction recon,
                                 FluxTreatment treatment) {
  ConservedField out(grid);
  if (treatment == FluxTreatment::characteristic)
    explicit_flux_sweeps<true>(u, p, grid, alpha, lambda, gamma, recon, out);
  else
    explicit_flux_sweeps<false>(u, p, grid, alpha, lambda, gamma, recon, out);
  return out;
}

ConservedField div_cw(const ConservedField& u, const Field& p, const Grid& grid, double alpha,
                      double lambda, double gamma, Reconstruction recon) {
  return div_explicit_flux(u, p, grid, alpha, lambda, gamma, recon, FluxTreatment::characteristic);
}

Field div_w(const Field& fx, const Field& fy, const Field& state, const Grid& grid, double lambda,
            Reconstruction recon) {
  Field out(grid);
  const bool use_state = lambda != 0.0;
  for (int dir = 0; dir < grid.dim; ++dir) {
    const Field& f = dir == 0 ? fx : fy;
    auto cell = [&](int i, int j, detail::CellFlux<1>& cf) {
      cf.flux[0] = f(i, j);
      cf.state[0] = use_state ? state(i, j) : 0.0;
    };
    detail::flux_divergence<1, false>(grid, dir, lambda, 0.0, recon, cell, {&out});
  }
  return out;
}

std::pair<Field, Field> grad_w(const Field& p, const Grid& grid, Reconstruction recon) {
  std::pair<Field, Field> out{Field(grid), grid.dim == 2 ? Field(grid) : Field()};
  for (int dir = 0; dir < grid.dim; ++dir) {
    auto cell = [&](int i, int j, detail::CellFlux<1>& cf) {
      cf.flux[0] = p(i, j);
      cf.state[0] = 0.0;
    };
    Field* target = dir == 0 ? &out.first : &out.second;
    detail::flux_divergence<1, false>(grid, dir, 0.0, 0.0, recon, cell, {target});
  }
  return out;
}

Field product(const Field& a, const Field& b) {
  Field out = a;
  for (int j = -a.gy(); j < a.ny() + a.gy(); ++j) {
    double* o = out.row(j);
    const double* br = b.row(j);
    for (std::size_t k = 0; k < a.stride(); ++k) o[k] *= br[k];
  }
  return out;
}

}  // namespace allmach
