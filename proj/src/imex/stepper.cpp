#include "allmach/imex/stepper.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

template <class Fn>
void for_interior(const Grid& grid, Fn&& fn) {
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) fn(i, j);
}

Field scaled(const Field& x, double a, const Grid& grid) {
  Field out(grid);
  for_interior(grid, [&](int i, int j) { out(i, j) = a * x(i, j); });
  return out;
}

}  // namespace

SemiImplicitStepper::SemiImplicitStepper(const Grid& grid, const EulerParams& params,
                                         ButcherPair tableau, StepperOptions options)
    : grid_(grid), params_(params), tableau_(std::move(tableau)), options_(options) {
  const TableauReport rep = validate_tableau(tableau_, 1);
  const TableauCheck* sa = rep.find("stiffly_accurate");
  const TableauCheck* inv = rep.find("implicit_invertible");
  if (!sa->passed || !inv->passed)
    throw SolverError(ErrorKind::InvalidConfig,
                      "the semi-implicit stepper needs a stiffly accurate DIRK implicit tableau");
}

double SemiImplicitStepper::stable_dt(const ConservedField& u, double cfl) const {
  return cfl_dt(u, grid_, params_, cfl);
}

ConservedField SemiImplicitStepper::step(const ConservedField& un, double dt) {
  const int s = tableau_.s;
  const double gamma = params_.gamma;
  const double g1 = gamma - 1.0;
  const double eps2 = params_.eps2();
  const double alpha = params_.alpha;
  const double w = params_.implicit_pressure_weight();
  const bool two_d = grid_.dim == 2;
  const Reconstruction recon = options_.recon;

  ws_ = StageWorkspace{};

  for (int i = 0; i < s; ++i) {
    const double aii = tableau_.im(i, i);

    ConservedField ue = un;
    for (int j = 0; j < i; ++j) {
      const double a = tableau_.ex(i, j);
      if (a == 0.0) continue;
      axpy(ue, -dt * a, ws_.k_ex[j]);
      axpy(ue, -dt * a, ws_.k_im[j]);
    }
    fill_ghosts(ue, grid_);
    Field pe = pressure_from_conserved(ue, grid_, params_);
    fill_ghosts(pe, grid_);
    const double pbar = interior_mean(pe);
    const double lambda = max_wave_speed(ue, grid_, params_);

    ConservedField kex = div_explicit_flux(ue, pe, grid_, alpha, lambda, gamma, recon,
                                           options_.explicit_treatment);
    kex.en.fill(0.0);

    Field rho_i = un.rho;
    Field qx = un.qx;
    Field qy = un.qy;
    Field e_t = un.en;
    for (int j = 0; j < i; ++j) {
      const double a = tableau_.im(i, j);
      if (a == 0.0) continue;
      axpy(rho_i, -dt * a, ws_.k_ex[j].rho);
      axpy(qx, -dt * a, ws_.k_ex[j].qx);
      axpy(qx, -dt * a, ws_.k_im[j].qx);
      if (two_d) {
        axpy(qy, -dt * a, ws_.k_ex[j].qy);
        axpy(qy, -dt * a, ws_.k_im[j].qy);
      }
      axpy(e_t, -dt * a, ws_.k_im[j].en);
    }
    axpy(rho_i, -dt * aii, kex.rho);
    axpy(qx, -dt * aii, kex.qx);
    if (two_d) axpy(qy, -dt * aii, kex.qy);

    Field h(grid_);
    for_interior(grid_, [&](int ii, int jj) {
      const double r = rho_i(ii, jj);
      if (!(r > 0.0))
        throw SolverError(ErrorKind::NonPositiveDensity,
                          "implicit stage density is not positive at cell (" + std::to_string(ii) +
                              ", " + std::to_string(jj) + ")");
      h(ii, jj) = (ue.en(ii, jj) + pe(ii, jj)) / r;
    });
    fill_ghosts(h, grid_);

    // div_W(H q) with the energy as the split partner
    auto energy_divergence = [&](const Field& mx, const Field& my) {
      Field fx(grid_), fy;
      for_interior(grid_, [&](int ii, int jj) { fx(ii, jj) = h(ii, jj) * mx(ii, jj); });
      fill_ghosts(fx, grid_, Parity::odd, Parity::even);
      if (two_d) {
        fy = Field(grid_);
        for_interior(grid_, [&](int ii, int jj) { fy(ii, jj) = h(ii, jj) * my(ii, jj); });
        fill_ghosts(fy, grid_, Parity::even, Parity::odd);
      }
      return div_w(fx, fy, ue.en, grid_, lambda, recon);
    };

    const Field k_tt = energy_divergence(qx, qy);
    Field e3(grid_);
    for_interior(grid_, [&](int ii, int jj) {
      const double ke = 0.5 * eps2 *
                        (ue.qx(ii, jj) * ue.qx(ii, jj) + ue.qy(ii, jj) * ue.qy(ii, jj)) /
                        ue.rho(ii, jj);
      e3(ii, jj) = e_t(ii, jj) - dt * aii * k_tt(ii, jj) - pbar / g1 - ke;
    });

    ConservedField kim(grid_);
    Field p2;
    SolveReport report;
    if (w == 0.0) {
      p2 = scaled(e3, g1 / eps2, grid_);
      kim.en = k_tt;
    } else {
      const HelmholtzOperator op(grid_, eps2 / g1, dt * dt * aii * aii * w, h);
      const bool warm = options_.warm_start && !last_p2_.empty();
      p2 = solve(op, e3, options_.elliptic, &report, warm ? &last_p2_ : nullptr);
      fill_ghosts(p2, grid_);
      auto [gx, gy] = grad_w(p2, grid_, recon);
      kim.qx = scaled(gx, w, grid_);
      axpy(qx, -dt * aii, kim.qx);
      if (two_d) {
        kim.qy = scaled(gy, w, grid_);
        axpy(qy, -dt * aii, kim.qy);
      }
      if (options_.energy == EnergyUpdate::flux) {
        kim.en = energy_divergence(qx, qy);
      } else {
        kim.en = k_tt;
        axpy(kim.en, -dt * aii * w, op.diffusion(p2));
      }
      last_p2_ = p2;
    }

    ConservedField ui(grid_);
    ui.rho = std::move(rho_i);
    ui.qx = std::move(qx);
    ui.qy = std::move(qy);
    ui.en = std::move(e_t);
    axpy(ui.en, -dt * aii, kim.en);

    ws_.u_e.push_back(std::move(ue));
    ws_.u_i.push_back(std::move(ui));
    ws_.k_ex.push_back(std::move(kex));
    ws_.k_im.push_back(std::move(kim));
    ws_.p_e.push_back(std::move(pe));
    ws_.p_i2.push_back(std::move(p2));
    ws_.pbar_e.push_back(pbar);
    ws_.lambda.push_back(lambda);
    ws_.solves.push_back(report);
  }

  ConservedField out = ws_.u_i.back();
  check_admissible(out, grid_, params_, "end of step");
  return out;
}

ConservedField si_imex_step(const ConservedField& un, double dt, const ButcherPair& tableau,
                            const Grid& grid, const EulerParams& params,
                            const StepperOptions& options) {
  SemiImplicitStepper stepper(grid, params, tableau, options);
  return stepper.step(un, dt);
}

AdvanceResult advance(TimeIntegrator& integrator, ConservedField u0, double t_final, double cfl,
                      const std::vector<StepObserver>& observers) {
  AdvanceResult r{std::move(u0), 0, 0.0};
  while (r.t < t_final) {
    double dt = integrator.stable_dt(r.u, cfl);
    const bool last = r.t + dt >= t_final;
    if (last) dt = t_final - r.t;
    try {
      r.u = integrator.step(r.u, dt);
    } catch (const SolverError& e) {
      std::string what = e.what();
      const std::string prefix = std::string(to_string(e.kind())) + ": ";
      if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
      throw SolverError(e.kind(), what + " (step " +
                                      std::to_string(r.steps + 1) + ", t = " +
                                      std::to_string(r.t) + ")");
    }
    for (int c = 0; c < 4; ++c)
      if (!interior_finite(r.u[c]))
        throw SolverError(ErrorKind::NonFinite,
                          "non-finite state after step " + std::to_string(r.steps + 1));
    ++r.steps;
    r.t = last ? t_final : r.t + dt;
    for (const auto& obs : observers) obs(r.steps, r.t, r.u);
  }
  return r;
}

}  // namespace allmach
