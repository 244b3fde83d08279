#include "allmach/problems/exact_riemann.hpp"

#include <algorithm>
#include <cmath>

#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

struct Side {
  double rho, u, p, c;
};

// Pressure function of one side and its derivative in p.
void pressure_function(double p, const Side& k, double g, double& f, double& df) {
  if (p > k.p) {
    const double a = 2.0 / ((g + 1.0) * k.rho);
    const double b = (g - 1.0) / (g + 1.0) * k.p;
    const double q = std::sqrt(a / (p + b));
    f = (p - k.p) * q;
    df = q * (1.0 - 0.5 * (p - k.p) / (b + p));
  } else {
    const double pr = p / k.p;
    f = 2.0 * k.c / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
    df = std::pow(pr, -(g + 1.0) / (2.0 * g)) / (k.rho * k.c);
  }
}

Side side(const PrimitiveState& w, double g) {
  if (!(w.rho > 0.0) || !(w.p > 0.0))
    throw SolverError(ErrorKind::InvalidPrimitive, "Riemann data need positive rho and p");
  return {w.rho, w.u, w.p, std::sqrt(g * w.p / w.rho)};
}

}  // namespace

StarState riemann_star(const PrimitiveState& left, const PrimitiveState& right, double g) {
  const Side l = side(left, g), r = side(right, g);
  const double du = r.u - l.u;
  if (2.0 * (l.c + r.c) / (g - 1.0) <= du)
    throw SolverError(ErrorKind::VacuumFormation, "Riemann data generate vacuum");

  // primitive-variable linearisation as the starting guess
  const double ppv = 0.5 * (l.p + r.p) - 0.125 * du * (l.rho + r.rho) * (l.c + r.c);
  double p = std::max(1e-8 * std::min(l.p, r.p), ppv);
  StarState out;
  for (int it = 1; it <= 100; ++it) {
    double fl, dfl, fr, dfr;
    pressure_function(p, l, g, fl, dfl);
    pressure_function(p, r, g, fr, dfr);
    double next = p - (fl + fr + du) / (dfl + dfr);
    if (next <= 0.0) next = 0.5 * p;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    out.iterations = it;
    if (change < 1e-14) break;
  }
  double fl, dfl, fr, dfr;
  pressure_function(p, l, g, fl, dfl);
  pressure_function(p, r, g, fr, dfr);
  out.p = p;
  out.u = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
  return out;
}

PrimitiveState exact_riemann(const PrimitiveState& left, const PrimitiveState& right, double g,
                             double xi) {
  const StarState star = riemann_star(left, right, g);
  const bool left_side = xi <= star.u;
  const Side k = left_side ? side(left, g) : side(right, g);
  const double dir = left_side ? 1.0 : -1.0;  // +1 for the left wave family
  const double gm = (g - 1.0) / (g + 1.0);
  auto out = [](double rho, double u, double p) { return PrimitiveState{rho, u, 0.0, p}; };

  if (star.p > k.p) {
    // shock
    const double pr = star.p / k.p;
    const double speed = k.u - dir * k.c * std::sqrt((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g));
    const bool outside = left_side ? xi <= speed : xi >= speed;
    if (outside) return out(k.rho, k.u, k.p);
    return out(k.rho * (pr + gm) / (gm * pr + 1.0), star.u, star.p);
  }
  // rarefaction
  const double rho_star = k.rho * std::pow(star.p / k.p, 1.0 / g);
  const double c_star = k.c * std::pow(star.p / k.p, (g - 1.0) / (2.0 * g));
  const double head = k.u - dir * k.c;
  const double tail = star.u - dir * c_star;
  const bool outside = left_side ? xi <= head : xi >= head;
  if (outside) return out(k.rho, k.u, k.p);
  const bool inside_star = left_side ? xi >= tail : xi <= tail;
  if (inside_star) return out(rho_star, star.u, star.p);
  // inside the fan
  const double u = 2.0 / (g + 1.0) * (dir * k.c + (g - 1.0) / 2.0 * k.u + xi);
  const double c = 2.0 / (g + 1.0) * (k.c + dir * (g - 1.0) / 2.0 * (k.u - xi));
  const double rho = k.rho * std::pow(c / k.c, 2.0 / (g - 1.0));
  const double p = k.p * std::pow(c / k.c, 2.0 * g / (g - 1.0));
  return out(rho, u, p);
}

}  // namespace allmach
