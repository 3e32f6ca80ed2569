#include "oracles/compound_os.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "brinkstab/baseflow.hpp"

namespace oracles {

namespace {

using State = std::array<Cx, 6>;

State rhs(const State& y, Cx P, Cx Q) {
  return {y[1],
          y[2] + y[3],
          P * y[1] + y[4],
          y[4],
          y[5] + P * y[3] - Q * y[0],
          -Q * y[1]};
}

struct Coeffs {
  const brinkstab::BaseFlow& flow;
  double M, R, a;
  Cx c;
  void at(double z, Cx& P, Cx& Q) const {
    const auto s = flow.eval(z);
    const Cx umc = s.U - c;
    P = 2.0 * a * a + M * M + Cx(0.0, 1.0) * a * R * umc;
    Q = -std::pow(a, 4) - M * M * a * a - Cx(0.0, 1.0) * a * R * (a * a * umc + s.d2U);
  }
};

}  // namespace

Cx compound_D(double M, double R, double a, Cx c, int nsteps) {
  brinkstab::BaseFlow flow(M);
  const Coeffs cf{flow, M, R, a, c};
  const double h = 2.0 / nsteps;
  State y{};
  y[5] = 1.0;
  double z = -1.0;
  Cx P0, Q0, Ph, Qh, P1, Q1;
  for (int k = 0; k < nsteps; ++k) {
    cf.at(z, P0, Q0);
    cf.at(z + h / 2.0, Ph, Qh);
    cf.at(z + h, P1, Q1);
    const State k1 = rhs(y, P0, Q0);
    State t;
    for (int i = 0; i < 6; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    const State k2 = rhs(t, Ph, Qh);
    for (int i = 0; i < 6; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    const State k3 = rhs(t, Ph, Qh);
    for (int i = 0; i < 6; ++i) t[i] = y[i] + h * k3[i];
    const State k4 = rhs(t, P1, Q1);
    double big = 0.0;
    for (int i = 0; i < 6; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      big = std::max(big, std::abs(y[i]));
    }
    if (big > 1e10) {  // positive-real rescale keeps zeros and phases intact
      for (auto& v : y) v /= big;
    }
    z += h;
  }
  return y[0];
}

Cx compound_refine(double M, double R, double a, Cx c0, int nsteps) {
  Cx c1 = c0 * (1.0 + 1e-5) + Cx(0.0, 1e-7);
  Cx f0 = compound_D(M, R, a, c0, nsteps);
  Cx f1 = compound_D(M, R, a, c1, nsteps);
  for (int it = 0; it < 40; ++it) {
    if (f1 == f0) break;
    const Cx c2 = c1 - f1 * (c1 - c0) / (f1 - f0);
    c0 = c1;
    f0 = f1;
    c1 = c2;
    f1 = compound_D(M, R, a, c1, nsteps);
    if (std::abs(c1 - c0) < 1e-13 * std::max(1.0, std::abs(c1))) break;
  }
  return c1;
}

int compound_count(double M, double R, double a, double re0, double re1, double im0,
                   double im1, int nsteps, int base_per_side) {
  const Cx corners[5] = {{re0, im0}, {re1, im0}, {re1, im1}, {re0, im1}, {re0, im0}};
  std::vector<Cx> pts;
  for (int s = 0; s < 4; ++s) {
    for (int i = 0; i < base_per_side; ++i) {
      const double t = static_cast<double>(i) / base_per_side;
      pts.push_back(corners[s] + (corners[s + 1] - corners[s]) * t);
    }
  }
  pts.push_back(corners[0]);

  auto D = [&](Cx c) { return compound_D(M, R, a, c, nsteps); };
  std::function<double(Cx, Cx, Cx, Cx, int)> inc = [&](Cx c0, Cx c1, Cx d0, Cx d1,
                                                       int depth) -> double {
    const double dphi = std::arg(d1 / d0);
    if (std::abs(dphi) < 1.0 || depth >= 28) return dphi;
    const Cx cm = 0.5 * (c0 + c1);
    const Cx dm = D(cm);
    return inc(c0, cm, d0, dm, depth + 1) + inc(cm, c1, dm, d1, depth + 1);
  };
  double total = 0.0;
  Cx dprev = D(pts[0]);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const Cx dk = D(pts[k]);
    total += inc(pts[k - 1], pts[k], dprev, dk, 0);
    dprev = dk;
  }
  return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

}  // namespace oracles
