#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

namespace allmach {

enum class Reconstruction { weno5, tvd2 };

/// Which side of the interface the stencil leans on. `left` reconstructs the
/// value at x_{i+1/2} from cells i-2..i+2 (right-going, F+); `right` from
/// cells i-1..i+3 (left-going, F-).
enum class Bias { left, right };

inline constexpr double kWenoDelta = 1e-6;

// Fifth-order WENO value at the right edge of the centre cell c of (a, b, c, d, e).
inline double weno5_edge(double a, double b, double c, double d, double e) {
  const double q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
  const double q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
  const double q2 = (2.0 * c + 5.0 * d - e) / 6.0;

  const double t0 = a - 2.0 * b + c, s0 = a - 4.0 * b + 3.0 * c;
  const double t1 = b - 2.0 * c + d, s1 = b - d;
  const double t2 = c - 2.0 * d + e, s2 = 3.0 * c - 4.0 * d + e;
  const double beta0 = 13.0 / 12.0 * t0 * t0 + 0.25 * s0 * s0;
  const double beta1 = 13.0 / 12.0 * t1 * t1 + 0.25 * s1 * s1;
  const double beta2 = 13.0 / 12.0 * t2 * t2 + 0.25 * s2 * s2;

  const double a0 = 0.1 / ((kWenoDelta + beta0) * (kWenoDelta + beta0));
  const double a1 = 0.6 / ((kWenoDelta + beta1) * (kWenoDelta + beta1));
  const double a2 = 0.3 / ((kWenoDelta + beta2) * (kWenoDelta + beta2));
  return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2);
}

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

// MUSCL value at the right edge of the centre cell b of (a, b, c).
inline double tvd2_edge(double a, double b, double c) {
  return b + 0.5 * minmod(b - a, c - b);
}

/// Interface value from a 5-point stencil. For Bias::left the stencil is
/// v_{i-2..i+2}; for Bias::right it is v_{i-1..i+3}. Either way the result
/// approximates v at x_{i+1/2}.
inline double weno5_point(std::span<const double, 5> s, Bias bias) {
  return bias == Bias::left ? weno5_edge(s[0], s[1], s[2], s[3], s[4])
                            : weno5_edge(s[4], s[3], s[2], s[1], s[0]);
}

/// Interface value from a 3-point stencil: v_{i-1..i+1} for Bias::left,
/// v_{i..i+2} for Bias::right.
inline double tvd2_point(std::span<const double, 3> s, Bias bias) {
  return bias == Bias::left ? tvd2_edge(s[0], s[1], s[2]) : tvd2_edge(s[2], s[1], s[0]);
}

/// Reconstructions on the 6-cell window w[0..5] = v_{i-2..i+3} around x_{i+1/2}.
inline double reconstruct_plus(const double* w, Reconstruction r) {
  return r == Reconstruction::weno5 ? weno5_edge(w[0], w[1], w[2], w[3], w[4])
                                    : tvd2_edge(w[1], w[2], w[3]);
}

inline double reconstruct_minus(const double* w, Reconstruction r) {
  return r == Reconstruction::weno5 ? weno5_edge(w[5], w[4], w[3], w[2], w[1])
                                    : tvd2_edge(w[4], w[3], w[2]);
}

}  // namespace allmach
