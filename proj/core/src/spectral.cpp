#include "brinkstab/spectral.hpp"

#include <cmath>

#include "brinkstab/errors.hpp"

namespace brinkstab {

namespace {

// Differentiation matrices after Weideman & Reddy: node differences from
// trig identities, the flipping trick for the lower half, and the Welfert
// recursion per derivative order with a negative-sum diagonal.
void chebdif(int N, Eigen::VectorXd& x, Eigen::MatrixXd D[4]) {
  const int n = N - 1;
  x.resize(N);
  Eigen::VectorXd th(N);
  for (int k = 0; k < N; ++k) {
    th[k] = k * M_PI / n;
    x[k] = std::sin(M_PI * (n - 2.0 * k) / (2.0 * n));
  }
  Eigen::MatrixXd DX(N, N);
  const int n1 = N / 2;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < N; ++j) {
      DX(i, j) = 2.0 * std::sin((th[j] + th[i]) / 2.0) * std::sin((th[j] - th[i]) / 2.0);
    }
  }
  for (int i = n1; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      DX(i, j) = -DX(N - 1 - i, N - 1 - j);
    }
  }
  for (int i = 0; i < N; ++i) DX(i, i) = 1.0;

  Eigen::MatrixXd C(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      C(i, j) = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    }
  }
  C.row(0) *= 2.0;
  C.row(N - 1) *= 2.0;
  C.col(0) *= 0.5;
  C.col(N - 1) *= 0.5;

  Eigen::MatrixXd Z = DX.cwiseInverse();
  for (int i = 0; i < N; ++i) Z(i, i) = 0.0;

  Eigen::MatrixXd Dk = Eigen::MatrixXd::Identity(N, N);
  for (int order = 1; order <= 4; ++order) {
    Eigen::VectorXd diag = Dk.diagonal();
    Dk = order * (Z.array() * ((C.array().colwise() * diag.array()) - Dk.array())).matrix();
    for (int i = 0; i < N; ++i) Dk(i, i) = 0.0;
    for (int i = 0; i < N; ++i) Dk(i, i) = -Dk.row(i).sum();
    D[order - 1] = Dk;
  }
}

Eigen::VectorXd clencurt(int N) {
  const int n = N - 1;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n - 1);
  auto theta = [n](int k) { return k * M_PI / n; };
  if (n % 2 == 0) {
    w[0] = 1.0 / (n * n - 1.0);
    w[n] = w[0];
    for (int k = 1; k <= n / 2 - 1; ++k) {
      for (int i = 1; i < n; ++i) v[i - 1] -= 2.0 * std::cos(2.0 * k * theta(i)) / (4.0 * k * k - 1.0);
    }
    for (int i = 1; i < n; ++i) v[i - 1] -= std::cos(n * theta(i)) / (n * n - 1.0);
  } else {
    w[0] = 1.0 / (n * n);
    w[n] = w[0];
    for (int k = 1; k <= (n - 1) / 2; ++k) {
      for (int i = 1; i < n; ++i) v[i - 1] -= 2.0 * std::cos(2.0 * k * theta(i)) / (4.0 * k * k - 1.0);
    }
  }
  for (int i = 1; i < n; ++i) w[i] = 2.0 * v[i - 1] / n;
  return w;
}

}  // namespace

SpectralGrid build_grid(int N) {
  if (N < 8) {
    throw UsageError("build_grid: need N >= 8 nodes");
  }
  SpectralGrid g;
  g.N = N;
  Eigen::MatrixXd D[4];
  chebdif(N, g.nodes, D);
  g.D1 = std::move(D[0]);
  g.D2 = std::move(D[1]);
  g.D3 = std::move(D[2]);
  g.D4 = std::move(D[3]);
  g.weights = clencurt(N);
  return g;
}

BcKind parse_bc_kind(const std::string& name) {
  if (name == "dirichlet") return BcKind::dirichlet;
  if (name == "clamped") return BcKind::clamped;
  throw UsageError("apply_bc: unknown boundary-condition kind '" + name + "'");
}

Eigen::VectorXd BcRecipe::reconstruct(const Eigen::VectorXd& interior) const {
  return eval0 * interior;
}

Eigen::VectorXcd BcRecipe::reconstruct(const Eigen::VectorXcd& interior) const {
  return eval0 * interior.real() + std::complex<double>(0, 1) * (eval0 * interior.imag());
}

BcRecipe apply_bc(const SpectralGrid& grid, BcKind kind) {
  const int N = grid.N;
  const int ni = N - 2;
  BcRecipe r;
  r.kind = kind;
  r.N = N;

  if (kind == BcKind::dirichlet) {
    Eigen::MatrixXd pad = Eigen::MatrixXd::Zero(N, ni);
    pad.block(1, 0, ni, ni).setIdentity();
    r.eval0 = pad;
    r.eval1 = grid.D1 * pad;
    r.eval2 = grid.D2 * pad;
    r.eval4 = grid.D4 * pad;
    r.reduced_d1 = grid.D1.block(1, 1, ni, ni);
    r.reduced_d2 = grid.D2.block(1, 1, ni, ni);
    r.reduced_d4 = grid.D4.block(1, 1, ni, ni);
    return r;
  }

  // clamped: w = (1-z^2) q, unknowns are w at interior nodes; q(+-1) = 0.
  // Derivatives of w in terms of spectral derivatives of q:
  //   w'   = (1-z^2) q'   - 2z q
  //   w''  = (1-z^2) q''  - 4z q'   - 2 q
  //   w''''= (1-z^2) q''''- 8z q''' - 12 q''
  const Eigen::VectorXd& z = grid.nodes;
  Eigen::MatrixXd Sm = Eigen::MatrixXd::Zero(N, ni);  // w interior -> q full
  for (int i = 0; i < ni; ++i) {
    const double zi = z[i + 1];
    Sm(i + 1, i) = 1.0 / (1.0 - zi * zi);
  }
  Eigen::VectorXd omz2 = (1.0 - z.array().square()).matrix();
  auto dg = [](const Eigen::VectorXd& v) { return Eigen::MatrixXd(v.asDiagonal()); };
  const Eigen::MatrixXd Dz = dg(z);
  r.eval0 = Eigen::MatrixXd::Zero(N, ni);  // (1-z^2) q: exactly the padding
  r.eval0.block(1, 0, ni, ni).setIdentity();
  r.eval1 = (dg(omz2) * grid.D1 - 2.0 * Dz) * Sm;
  r.eval2 = (dg(omz2) * grid.D2 - 4.0 * Dz * grid.D1
             - 2.0 * Eigen::MatrixXd::Identity(N, N)) * Sm;
  r.eval4 = (dg(omz2) * grid.D4 - 8.0 * Dz * grid.D3 - 12.0 * grid.D2) * Sm;
  r.reduced_d1 = r.eval1.block(1, 0, ni, ni);
  r.reduced_d2 = r.eval2.block(1, 0, ni, ni);
  r.reduced_d4 = r.eval4.block(1, 0, ni, ni);
  return r;
}

}  // namespace brinkstab
