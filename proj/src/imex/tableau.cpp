#include "allmach/imex/tableau.hpp"

#include <algorithm>
#include <cmath>

namespace allmach {

namespace {

void fill_abscissae(ButcherPair& t) {
  t.c_ex.assign(t.s, 0.0);
  t.c_im.assign(t.s, 0.0);
  for (int i = 0; i < t.s; ++i)
    for (int j = 0; j < t.s; ++j) {
      t.c_ex[i] += t.ex(i, j);
      t.c_im[i] += t.im(i, j);
    }
}

}  // namespace

ButcherPair tableau_first_order() {
  ButcherPair t;
  t.s = 1;
  t.order = 1;
  t.a_ex = {0.0};
  t.a_im = {1.0};
  t.b = {1.0};
  fill_abscissae(t);
  return t;
}

ButcherPair tableau_si_imex_443() {
  constexpr double g = 0.435866521508;
  ButcherPair t;
  t.s = 4;
  t.order = 3;
  // clang-format off
  t.a_ex = {
      0.0,                 0.0,            0.0,             0.0,
      g,                   0.0,            0.0,             0.0,
      0.435866521508,      0.282066739245, 0.0,             0.0,
      -0.733534082748750,  2.150527381100, -0.416993298352, 0.0,
  };
  t.a_im = {
      g,   0.0,            0.0,             0.0,
      0.0, g,              0.0,             0.0,
      0.0, 0.282066739245, g,               0.0,
      0.0, 1.208496649176, -0.644363170684, g,
  };
  // clang-format on
  t.b = {0.0, 1.208496649176, -0.644363170684, g};
  // the printed abscissae agree with the row sums to the printed digits
  t.c_ex = {0.0, g, 0.717933260754, 1.0};
  t.c_im = {g, g, 0.717933260754, 1.0};
  return t;
}

ButcherPair tableau_si_imex_443_balanced() {
  ButcherPair t = tableau_si_imex_443();
  const auto at = [&](int i, int j) -> double& { return t.a_ex[static_cast<std::size_t>(i) * 4 + j]; };
  at(3, 0) = -(t.b[1] * at(1, 0) + t.b[2] * at(2, 0)) / t.b[3];
  at(3, 1) = 1.0 - at(3, 0) - at(3, 2);
  return t;
}

bool TableauReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const TableauCheck& c) { return c.passed; });
}

const TableauCheck* TableauReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

TableauReport validate_tableau(const ButcherPair& t, int target_order, double tol) {
  TableauReport rep;
  const int s = t.s;
  auto add = [&](std::string name, double residual) {
    rep.checks.push_back({std::move(name), residual, std::abs(residual) <= tol});
  };

  double upper_ex = 0.0, upper_im = 0.0, min_diag = INFINITY;
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) upper_ex = std::max(upper_ex, std::abs(t.ex(i, j)));
    for (int j = i + 1; j < s; ++j) upper_im = std::max(upper_im, std::abs(t.im(i, j)));
    min_diag = std::min(min_diag, std::abs(t.im(i, i)));
  }
  add("explicit_strictly_lower", upper_ex);
  add("implicit_lower", upper_im);
  rep.checks.push_back({"implicit_invertible", min_diag, min_diag > tol});

  double sa = 0.0;
  for (int j = 0; j < s; ++j) sa = std::max(sa, std::abs(t.b[j] - t.im(s - 1, j)));
  add("stiffly_accurate", sa);
  add("last_abscissa_one", t.c_im[s - 1] - 1.0);

  double cex = 0.0, cim = 0.0;
  for (int i = 0; i < s; ++i) {
    double rex = 0.0, rim = 0.0;
    for (int j = 0; j < s; ++j) {
      rex += t.ex(i, j);
      rim += t.im(i, j);
    }
    cex = std::max(cex, std::abs(rex - t.c_ex[i]));
    cim = std::max(cim, std::abs(rim - t.c_im[i]));
  }
  add("explicit_abscissae", cex);
  add("implicit_abscissae", cim);

  double cmatch = 0.0;
  for (int i = 1; i < s; ++i) cmatch = std::max(cmatch, std::abs(t.c_ex[i] - t.c_im[i]));
  add("abscissae_match", cmatch);

  auto bsum = [&](auto&& f) {
    double acc = 0.0;
    for (int i = 0; i < s; ++i) acc += t.b[i] * f(i);
    return acc;
  };
  auto arow = [&](bool implicit, int i, const std::vector<double>& c) {
    double acc = 0.0;
    for (int j = 0; j < s; ++j) acc += (implicit ? t.im(i, j) : t.ex(i, j)) * c[j];
    return acc;
  };
  const auto& ce = t.c_ex;
  const auto& ci = t.c_im;

  if (target_order >= 1) add("order1_b", bsum([](int) { return 1.0; }) - 1.0);
  if (target_order >= 2) {
    add("order2_b_cex", bsum([&](int i) { return ce[i]; }) - 0.5);
    add("order2_b_cim", bsum([&](int i) { return ci[i]; }) - 0.5);
  }
  if (target_order >= 3) {
    const double third = 1.0 / 3.0, sixth = 1.0 / 6.0;
    add("order3_b_cex2", bsum([&](int i) { return ce[i] * ce[i]; }) - third);
    add("order3_b_cim2", bsum([&](int i) { return ci[i] * ci[i]; }) - third);
    add("order3_b_cex_cim", bsum([&](int i) { return ce[i] * ci[i]; }) - third);
    add("order3_b_aex_cex", bsum([&](int i) { return arow(false, i, ce); }) - sixth);
    add("order3_b_aim_cim", bsum([&](int i) { return arow(true, i, ci); }) - sixth);
    add("order3_b_aex_cim", bsum([&](int i) { return arow(false, i, ci); }) - sixth);
    add("order3_b_aim_cex", bsum([&](int i) { return arow(true, i, ce); }) - sixth);
  }
  return rep;
}

}  // namespace allmach
