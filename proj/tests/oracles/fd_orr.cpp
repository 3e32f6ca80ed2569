#include "oracles/fd_orr.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "brinkstab/baseflow.hpp"
#include "brinkstab/pencil.hpp"

namespace oracles {

using brinkstab::Complex;
using brinkstab::MatrixXcd;

double fd_orr_min_RE(double M, double a, int n) {
  const double h = 2.0 / (n + 1);
  Eigen::VectorXd U1(n), U2(n);
  {
    brinkstab::BaseFlow flow(M);
    for (int i = 0; i < n; ++i) {
      const double z = -1.0 + h * (i + 1);
      const auto s = flow.eval(z);
      U1[i] = s.dU;
      U2[i] = s.d2U;
    }
  }
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd D2 = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd D4 = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd D1 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    D2(i, i) = -2.0;
    if (i > 0) D2(i, i - 1) = 1.0;
    if (i + 1 < n) D2(i, i + 1) = 1.0;
    D4(i, i) = 6.0;
    if (i > 0) D4(i, i - 1) = -4.0;
    if (i + 1 < n) D4(i, i + 1) = -4.0;
    if (i > 1) D4(i, i - 2) = 1.0;
    if (i + 2 < n) D4(i, i + 2) = 1.0;
    if (i > 0) D1(i, i - 1) = -1.0;
    if (i + 1 < n) D1(i, i + 1) = 1.0;
  }
  // w(+-1) = 0 gives the zero Dirichlet rows above; w'(+-1) = 0 reflects the
  // ghost point across the wall.
  D4(0, 0) += 1.0;
  D4(n - 1, n - 1) += 1.0;
  D2 /= h * h;
  D4 /= h * h * h * h;
  D1 /= 2.0 * h;

  Eigen::MatrixXd lap = D2 - a * a * I;
  MatrixXcd A =
      (2.0 * (D4 - 2.0 * a * a * D2 + std::pow(a, 4) * I - M * M * lap)).cast<Complex>();
  Eigen::MatrixXd prod = Eigen::MatrixXd(U2.asDiagonal()) + 2.0 * (U1.asDiagonal() * D1);
  MatrixXcd B = Complex(0.0, -a) * prod.cast<Complex>();

  const auto qz = brinkstab::solve_pencil(A, B, false);
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < qz.alpha.size(); ++k) {
    if (std::abs(qz.beta[k]) < 1e-12 * std::max(1.0, std::abs(qz.alpha[k]))) continue;
    const Complex re = qz.alpha[k] / qz.beta[k];
    if (!std::isfinite(re.real()) || !std::isfinite(re.imag())) continue;
    // truncation leaves an O(h^2) imaginary residue on genuine modes
    if (std::abs(re.imag()) > 1e-2 * std::abs(re.real())) continue;
    if (re.real() > 0.0 && re.real() < best) best = re.real();
  }
  if (!std::isfinite(best)) throw std::runtime_error("fd_orr_min_RE: no positive eigenvalue");
  return best;
}

double fd_orr_min_RE_rich(double M, double a, int n) {
  const double r1 = fd_orr_min_RE(M, a, n);
  const double r2 = fd_orr_min_RE(M, a, 2 * n);
  return (4.0 * r2 - r1) / 3.0;
}

FdCritical fd_orr_critical(double M, double a_lo, double a_hi, int n) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = a_lo, hi = a_hi;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = fd_orr_min_RE_rich(M, c, n), fd = fd_orr_min_RE_rich(M, d, n);
  while (hi - lo > 1e-4) {
    if (fc < fd) {
      hi = d; d = c; fd = fc;
      c = hi - gr * (hi - lo); fc = fd_orr_min_RE_rich(M, c, n);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + gr * (hi - lo); fd = fd_orr_min_RE_rich(M, d, n);
    }
  }
  return fc < fd ? FdCritical{c, fc} : FdCritical{d, fd};
}

}  // namespace oracles
