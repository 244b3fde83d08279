#include "allmach/elliptic/helmholtz.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

constexpr double kInv24 = 1.0 / 24.0;

double interface_coeff(double hm1, double h0, double h1, double h2) {
  return (-h2 + 9.0 * h1 + 9.0 * h0 - hm1) / 16.0;
}

}  // namespace

HelmholtzOperator::HelmholtzOperator(const Grid& grid, double mass_coeff, double diff_coeff,
                                     const Field& h, GaugePolicy gauge)
    : grid_(grid), mass_(mass_coeff), diff_(diff_coeff), scratch_(grid), dscratch_(grid) {
  switch (gauge) {
    case GaugePolicy::automatic:
      gauge_ = grid.is_closed() && mass_coeff < kGaugeThreshold ? Gauge::zero_mean : Gauge::none;
      break;
    case GaugePolicy::none: gauge_ = Gauge::none; break;
    case GaugePolicy::zero_mean: gauge_ = Gauge::zero_mean; break;
  }

  Field hg = h;
  fill_ghosts(hg, grid);
  mean_h_ = interior_mean(hg);

  const int nx = grid.nx, ny = grid.ny;
  hx_.resize(static_cast<std::size_t>(ny) * (nx + 3));
  for (int j = 0; j < ny; ++j)
    for (int k = -2; k <= nx; ++k)
      hx_[static_cast<std::size_t>(j) * (nx + 3) + (k + 2)] =
          interface_coeff(hg(k - 1, j), hg(k, j), hg(k + 1, j), hg(k + 2, j));
  if (grid.dim == 2) {
    hy_.resize(static_cast<std::size_t>(nx) * (ny + 3));
    for (int i = 0; i < nx; ++i)
      for (int k = -2; k <= ny; ++k)
        hy_[static_cast<std::size_t>(i) * (ny + 3) + (k + 2)] =
            interface_coeff(hg(i, k - 1), hg(i, k), hg(i, k + 1), hg(i, k + 2));
  }
}

void HelmholtzOperator::diffusion_into(const Field& p, Field& out) const {
  const int nx = grid_.nx, ny = grid_.ny;
  std::vector<double> g(static_cast<std::size_t>(std::max(nx, ny) + 3));

  const double cx = kInv24 / grid_.dx;
  for (int j = 0; j < ny; ++j) {
    const double* pr = p.row(j) + p.gx();
    const double* hr = hx_.data() + static_cast<std::size_t>(j) * (nx + 3);
    for (int k = -2; k <= nx; ++k)
      g[k + 2] = hr[k + 2] * (27.0 * (pr[k + 1] - pr[k]) - (pr[k + 2] - pr[k - 1])) * cx;
    double* o = out.row(j) + out.gx();
    for (int i = 0; i < nx; ++i)
      o[i] = (27.0 * (g[i + 2] - g[i + 1]) - (g[i + 3] - g[i])) * cx;
  }
  if (grid_.dim == 1) return;

  const double cy = kInv24 / grid_.dy;
  for (int i = 0; i < nx; ++i) {
    const double* hc = hy_.data() + static_cast<std::size_t>(i) * (ny + 3);
    for (int k = -2; k <= ny; ++k)
      g[k + 2] = hc[k + 2] * (27.0 * (p(i, k + 1) - p(i, k)) - (p(i, k + 2) - p(i, k - 1))) * cy;
    for (int j = 0; j < ny; ++j)
      out(i, j) += (27.0 * (g[j + 2] - g[j + 1]) - (g[j + 3] - g[j])) * cy;
  }
}

Field HelmholtzOperator::diffusion(const Field& p2) const {
  Field p = p2;
  fill_ghosts(p, grid_);
  Field out(grid_);
  diffusion_into(p, out);
  return out;
}

Field HelmholtzOperator::apply(const Field& p2) const {
  Field p = p2;
  fill_ghosts(p, grid_);
  Field out(grid_);
  diffusion_into(p, out);
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) out(i, j) = mass_ * p(i, j) - diff_ * out(i, j);
  return out;
}

void HelmholtzOperator::apply(std::span<const double> x, std::span<double> y) const {
  scratch_.set_interior(x);
  fill_ghosts(scratch_, grid_);
  diffusion_into(scratch_, dscratch_);
  const int nx = grid_.nx;
  for (int j = 0; j < grid_.ny; ++j) {
    const double* d = dscratch_.row(j) + dscratch_.gx();
    const std::size_t off = static_cast<std::size_t>(j) * nx;
    for (int i = 0; i < nx; ++i) y[off + i] = mass_ * x[off + i] - diff_ * d[i];
  }
}

std::vector<double> HelmholtzOperator::diagonal() const {
  const int nx = grid_.nx, ny = grid_.ny;
  std::vector<double> d(grid_.cell_count(), mass_);
  const double sx = 1.0 / (576.0 * grid_.dx * grid_.dx);
  for (int j = 0; j < ny; ++j) {
    const double* hr = hx_.data() + static_cast<std::size_t>(j) * (nx + 3);
    for (int i = 0; i < nx; ++i) {
      const double dd = -(729.0 * (hr[i + 2] + hr[i + 1]) + hr[i + 3] + hr[i]) * sx;
      d[static_cast<std::size_t>(j) * nx + i] -= diff_ * dd;
    }
  }
  if (grid_.dim == 2) {
    const double sy = 1.0 / (576.0 * grid_.dy * grid_.dy);
    for (int i = 0; i < nx; ++i) {
      const double* hc = hy_.data() + static_cast<std::size_t>(i) * (ny + 3);
      for (int j = 0; j < ny; ++j) {
        const double dd = -(729.0 * (hc[j + 2] + hc[j + 1]) + hc[j + 3] + hc[j]) * sy;
        d[static_cast<std::size_t>(j) * nx + i] -= diff_ * dd;
      }
    }
  }
  return d;
}

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

void remove_mean(Vec& a) {
  const double m = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
  for (double& v : a) v -= m;
}

class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual void apply(const Vec& in, Vec& out) = 0;
};

class JacobiPreconditioner final : public Preconditioner {
 public:
  explicit JacobiPreconditioner(std::vector<double> diag) : inv_(std::move(diag)) {
    for (double& d : inv_) d = d != 0.0 ? 1.0 / d : 1.0;
  }
  void apply(const Vec& in, Vec& out) override {
    for (std::size_t k = 0; k < in.size(); ++k) out[k] = inv_[k] * in[k];
  }

 private:
  Vec inv_;
};

// Exact inverse of the operator with H replaced by its mean, diagonal in
// Fourier space on fully periodic grids.
class SpectralPreconditioner final : public Preconditioner {
 public:
  SpectralPreconditioner(const HelmholtzOperator& op, bool drop_mean) {
    const Grid& g = op.grid();
    nx_ = g.nx;
    ny_ = g.ny;
    const int nxc = nx_ / 2 + 1;
    const std::size_t ncomplex = static_cast<std::size_t>(ny_) * nxc;
    real_ = fftw_alloc_real(static_cast<std::size_t>(nx_) * ny_);
    spec_ = fftw_alloc_complex(ncomplex);
    if (g.dim == 1) {
      fwd_ = fftw_plan_dft_r2c_1d(nx_, real_, spec_, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_c2r_1d(nx_, spec_, real_, FFTW_ESTIMATE);
    } else {
      fwd_ = fftw_plan_dft_r2c_2d(ny_, nx_, real_, spec_, FFTW_ESTIMATE);
      bwd_ = fftw_plan_dft_c2r_2d(ny_, nx_, spec_, real_, FFTW_ESTIMATE);
    }

    auto sigma2 = [](int k, int n, double h) {
      const double th = 2.0 * M_PI * k / n;
      const double s = (54.0 * std::sin(0.5 * th) - 2.0 * std::sin(1.5 * th)) / 24.0;
      return s * s / (h * h);
    };
    const double scale = 1.0 / (static_cast<double>(nx_) * ny_);
    inv_symbol_.resize(ncomplex);
    for (int ky = 0; ky < ny_; ++ky) {
      const double sy = g.dim == 2 ? sigma2(ky, ny_, g.dy) : 0.0;
      for (int kx = 0; kx < nxc; ++kx) {
        const double sym =
            op.mass_coeff() + op.diff_coeff() * op.mean_h() * (sigma2(kx, nx_, g.dx) + sy);
        double inv = sym != 0.0 ? scale / sym : 0.0;
        if (kx == 0 && ky == 0 && drop_mean) inv = 0.0;
        inv_symbol_[static_cast<std::size_t>(ky) * nxc + kx] = inv;
      }
    }
  }

  ~SpectralPreconditioner() override {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  SpectralPreconditioner(const SpectralPreconditioner&) = delete;
  SpectralPreconditioner& operator=(const SpectralPreconditioner&) = delete;

  void apply(const Vec& in, Vec& out) override {
    std::copy(in.begin(), in.end(), real_);
    fftw_execute(fwd_);
    for (std::size_t k = 0; k < inv_symbol_.size(); ++k) {
      spec_[k][0] *= inv_symbol_[k];
      spec_[k][1] *= inv_symbol_[k];
    }
    fftw_execute(bwd_);
    std::copy(real_, real_ + out.size(), out.begin());
  }

 private:
  int nx_ = 0, ny_ = 0;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan fwd_ = nullptr, bwd_ = nullptr;
  Vec inv_symbol_;
};

}  // namespace

Field solve(const HelmholtzOperator& op, const Field& rhs, const SolveOptions& opts,
            SolveReport* report, const Field* initial_guess) {
  const Grid& grid = op.grid();
  const double mass = op.mass_coeff();
  const bool closed = grid.is_closed();
  SolveReport rep;

  if (op.diff_coeff() == 0.0) {
    if (mass == 0.0) throw SolverError(ErrorKind::SingularOperator, "zero operator");
    Field p(grid);
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) p(i, j) = rhs(i, j) / mass;
    if (report) *report = rep;
    return p;
  }
  if (closed && mass == 0.0 && op.gauge() == Gauge::none)
    throw SolverError(ErrorKind::SingularOperator,
                      "mass coefficient is zero and no gauge fixes the constant mode");

  const std::size_t n = grid.cell_count();
  Vec b = rhs.interior();
  const double full_norm = norm(b);
  double mean_part = 0.0;
  if (closed) {
    const double m = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
    mean_part = op.gauge() == Gauge::zero_mean ? 0.0 : m / mass;
    for (double& v : b) v -= m;
  }

  Vec x(n, 0.0);
  if (initial_guess) {
    x = initial_guess->interior();
    if (closed) remove_mean(x);
  }

  const double bnorm = norm(b);
  Field out(grid);
  // what is left after splitting off the mean is pure rounding
  if (bnorm <= 16.0 * std::numeric_limits<double>::epsilon() * full_norm) {
    out.set_interior(Vec(n, mean_part));
    if (report) *report = rep;
    return out;
  }

  std::unique_ptr<Preconditioner> precond;
  if (grid.is_periodic())
    precond = std::make_unique<SpectralPreconditioner>(op, closed);
  else
    precond = std::make_unique<JacobiPreconditioner>(op.diagonal());

  const int max_iter =
      opts.max_iter > 0
          ? opts.max_iter
          : static_cast<int>(10.0 * std::pow(static_cast<double>(n), 1.0 / grid.dim));
  // residual of the full system relative to the full rhs; the mean is exact by
  // construction, except under the zero-mean gauge where it is discarded
  const double ref_norm = op.gauge() == Gauge::zero_mean ? bnorm : full_norm;
  const double target = opts.tol * ref_norm;

  Vec r(n), rhat(n), p(n, 0.0), v(n, 0.0), s(n), t(n), phat(n), shat(n);
  op.apply(x, r);
  for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - r[k];

  double rnorm = norm(r);
  int it = 0;
  while (rnorm > target && it < max_iter) {
    // (re)start
    rhat = r;
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    bool breakdown = false;
    while (rnorm > target && it < max_iter && !breakdown) {
      ++it;
      const double rho_new = dot(rhat, r);
      if (rho_new == 0.0) {
        breakdown = true;
        break;
      }
      const double beta = (rho_new / rho) * (alpha / omega);
      rho = rho_new;
      for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * (p[k] - omega * v[k]);
      precond->apply(p, phat);
      if (closed) remove_mean(phat);
      op.apply(phat, v);
      const double rv = dot(rhat, v);
      if (rv == 0.0) {
        breakdown = true;
        break;
      }
      alpha = rho / rv;
      for (std::size_t k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
      if (norm(s) <= target) {
        for (std::size_t k = 0; k < n; ++k) x[k] += alpha * phat[k];
        op.apply(x, r);
        for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - r[k];
        rnorm = norm(r);
        break;
      }
      precond->apply(s, shat);
      if (closed) remove_mean(shat);
      op.apply(shat, t);
      const double tt = dot(t, t);
      omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        x[k] += alpha * phat[k] + omega * shat[k];
        r[k] = s[k] - omega * t[k];
      }
      rnorm = norm(r);
      if (omega == 0.0) breakdown = true;
    }
    // refresh the true residual before deciding to restart or stop
    op.apply(x, r);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - r[k];
    rnorm = norm(r);
  }

  rep.iterations = it;
  rep.relative_residual = rnorm / ref_norm;
  if (report) *report = rep;
  if (rnorm > target) {
    std::ostringstream os;
    os << "BiCGSTAB stopped after " << it << " iterations at relative residual "
       << rep.relative_residual << " (tol " << opts.tol << ")";
    throw SolverError(ErrorKind::EllipticSolveFailure, os.str());
  }
  for (double& xv : x) xv += mean_part;
  out.set_interior(x);
  return out;
}

}  // namespace allmach
