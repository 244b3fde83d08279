#pragma once

#include <array>
#include <vector>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"
#include "allmach/reconstruct/eigensystem.hpp"
#include "allmach/reconstruct/weno.hpp"

namespace allmach::detail {

/// Per-cell inputs of a flux-difference sweep with NC components.
template <int NC>
struct CellFlux {
  std::array<double, NC> flux{};
  std::array<double, NC> state{};
  PrimitiveState prim{};  // only read by characteristic sweeps
};

/// Scratch buffers for one grid line, reused across lines.
template <int NC>
struct LineBuffers {
  std::array<std::vector<double>, NC> plus, minus, fhat;
  std::vector<PrimitiveState> prim;

  void resize(int cells, int interfaces) {
    for (int c = 0; c < NC; ++c) {
      plus[c].resize(cells);
      minus[c].resize(cells);
      fhat[c].resize(interfaces);
    }
    prim.resize(cells);
  }
};

/// Finite-difference flux-split divergence along `dir`, accumulated into
/// `out`: out[c](i, j) += (Fhat_{i+1/2} - Fhat_{i-1/2}) / h.
///
/// `cell(i, j, CellFlux&)` supplies the flux, the state paired with it in the
/// Lax-Friedrichs split F+- = (F +- lambda U)/2, and (for characteristic
/// sweeps) the primitive state used to build the interface eigensystem. It is
/// called for interior cells and the kGhost cells beyond each end of a line,
/// so ghost values must be filled beforehand.
template <int NC, bool Characteristic, class CellFn>
void flux_divergence(const Grid& grid, int dir, double lambda, double gamma, Reconstruction recon,
                     CellFn&& cell, const std::array<Field*, NC>& out) {
  const int n = dir == 0 ? grid.nx : grid.ny;
  const int lines = dir == 0 ? grid.ny : grid.nx;
  const int g = kGhost;
  const int m = n + 2 * g;
  const double inv_h = 1.0 / grid.spacing(dir);
  const int eig_dim = NC == 3 ? 1 : 2;

  thread_local LineBuffers<NC> buf;
  buf.resize(m, n + 1);
  CellFlux<NC> cf;

  for (int line = 0; line < lines; ++line) {
    for (int k = 0; k < m; ++k) {
      const int i = dir == 0 ? k - g : line;
      const int j = dir == 0 ? line : k - g;
      cell(i, j, cf);
      for (int c = 0; c < NC; ++c) {
        buf.plus[c][k] = 0.5 * (cf.flux[c] + lambda * cf.state[c]);
        buf.minus[c][k] = 0.5 * (cf.flux[c] - lambda * cf.state[c]);
      }
      if constexpr (Characteristic) buf.prim[k] = cf.prim;
    }

    // interface i+1/2, i = -1..n-1, stored at slot i+1
    for (int i = -1; i < n; ++i) {
      const int a = i + g;
      if constexpr (Characteristic) {
        const PrimitiveState& wl = buf.prim[a];
        const PrimitiveState& wr = buf.prim[a + 1];
        const PrimitiveState avg{0.5 * (wl.rho + wr.rho), 0.5 * (wl.u + wr.u),
                                 0.5 * (wl.v + wr.v), 0.5 * (wl.p + wr.p)};
        const EigenSystem es = euler_eigensystem(avg, dir, gamma, eig_dim);
        double wp[NC][6], wm[NC][6];
        for (int s = 0; s < NC; ++s) {
          for (int w = 0; w < 6; ++w) {
            const int k = a - 2 + w;
            double accp = 0.0, accm = 0.0;
            for (int c = 0; c < NC; ++c) {
              const double lsc = es.left[s * NC + c];
              accp += lsc * buf.plus[c][k];
              accm += lsc * buf.minus[c][k];
            }
            wp[s][w] = accp;
            wm[s][w] = accm;
          }
        }
        double gch[NC];
        for (int s = 0; s < NC; ++s)
          gch[s] = reconstruct_plus(wp[s], recon) + reconstruct_minus(wm[s], recon);
        for (int c = 0; c < NC; ++c) {
          double acc = 0.0;
          for (int s = 0; s < NC; ++s) acc += es.right[c * NC + s] * gch[s];
          buf.fhat[c][i + 1] = acc;
        }
      } else {
        for (int c = 0; c < NC; ++c) {
          buf.fhat[c][i + 1] = reconstruct_plus(&buf.plus[c][a - 2], recon) +
                               reconstruct_minus(&buf.minus[c][a - 2], recon);
        }
      }
    }

    for (int c = 0; c < NC; ++c) {
      Field& o = *out[c];
      const std::vector<double>& fh = buf.fhat[c];
      if (dir == 0) {
        double* r = o.row(line) + o.gx();
        for (int i = 0; i < n; ++i) r[i] += (fh[i + 1] - fh[i]) * inv_h;
      } else {
        for (int j = 0; j < n; ++j) o(line, j) += (fh[j + 1] - fh[j]) * inv_h;
      }
    }
  }
}

}  // namespace allmach::detail
