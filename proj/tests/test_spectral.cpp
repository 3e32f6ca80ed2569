#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "brinkstab/errors.hpp"
#include "brinkstab/spectral.hpp"

using namespace brinkstab;

TEST_CASE("grid construction basics") {
  CHECK_THROWS_AS(build_grid(7), UsageError);
  const SpectralGrid g = build_grid(8);
  CHECK(g.nodes[0] == doctest::Approx(1.0));
  CHECK(g.nodes[g.N - 1] == doctest::Approx(-1.0));
  // exact differentiation of z^2 on 8 nodes
  Eigen::VectorXd z2 = g.nodes.array().square();
  CHECK((g.D1 * z2 - 2.0 * g.nodes).cwiseAbs().maxCoeff() < 1e-12);
  // constants are annihilated
  CHECK((g.D1 * Eigen::VectorXd::Ones(g.N)).cwiseAbs().maxCoeff() < 1e-11 * g.N);
}

TEST_CASE("quadrature is exact for low-degree polynomials and positive") {
  const SpectralGrid g = build_grid(16);
  CHECK(std::abs(g.weights.sum() - 2.0) < 1e-12);
  Eigen::VectorXd f = (1.0 - g.nodes.array().square()).matrix();
  CHECK(std::abs(g.weights.dot(f) - 4.0 / 3.0) < 1e-12);
  CHECK(g.weights.minCoeff() > 0.0);
  const SpectralGrid g2 = build_grid(33);  // odd panel count branch
  CHECK(std::abs(g2.weights.sum() - 2.0) < 1e-12);
  CHECK(g2.weights.minCoeff() > 0.0);
}

TEST_CASE("fourth derivative of z^4 at the double-precision floor") {
  // 24 is recovered to the cancellation floor of ~1e9-sized entries; the
  // floor sits near 1e-6 at this order, not at the 1e-8 scale.
  const SpectralGrid g = build_grid(32);
  Eigen::VectorXd z4 = g.nodes.array().pow(4);
  CHECK((g.D4 * z4 - 24.0 * Eigen::VectorXd::Ones(g.N)).cwiseAbs().maxCoeff() < 5e-6);
}

TEST_CASE("D2 agrees with D1*D1") {
  const SpectralGrid g = build_grid(24);
  CHECK((g.D2 - g.D1 * g.D1).cwiseAbs().maxCoeff() < 1e-9 * g.D2.cwiseAbs().maxCoeff());
}

TEST_CASE("spectral convergence of D1 on sin(pi z)") {
  double err[2];
  int Ns[2] = {12, 24};
  for (int k = 0; k < 2; ++k) {
    const SpectralGrid g = build_grid(Ns[k]);
    Eigen::VectorXd f(g.N), df(g.N);
    for (int i = 0; i < g.N; ++i) {
      f[i] = std::sin(M_PI * g.nodes[i]);
      df[i] = M_PI * std::cos(M_PI * g.nodes[i]);
    }
    err[k] = (g.D1 * f - df).cwiseAbs().maxCoeff();
  }
  CHECK(err[0] / err[1] >= 1e4);
}

TEST_CASE("dirichlet recipe: smallest eigenvalue of -D2 is pi^2/4") {
  const SpectralGrid g = build_grid(32);
  const BcRecipe bc = apply_bc(g, BcKind::dirichlet);
  Eigen::EigenSolver<Eigen::MatrixXd> es(-bc.reduced_d2);
  double smallest = 1e300;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const auto ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) < 1e-8 * std::abs(ev)) smallest = std::min(smallest, ev.real());
  }
  CHECK(smallest == doctest::Approx(2.4674011002723396547).epsilon(1e-6));
}

TEST_CASE("clamped recipe: boundary values and derivatives vanish exactly") {
  const SpectralGrid g = build_grid(24);
  const BcRecipe bc = apply_bc(g, BcKind::clamped);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist;
  for (int rep = 0; rep < 5; ++rep) {
    Eigen::VectorXd v(g.N - 2);
    for (auto& x : v.reshaped()) x = dist(rng);
    const Eigen::VectorXd full = bc.reconstruct(v);
    const Eigen::VectorXd d1 = bc.eval1 * v;
    CHECK(std::abs(full[0]) < 1e-13);
    CHECK(std::abs(full[g.N - 1]) < 1e-13);
    CHECK(std::abs(d1[0]) < 1e-13);
    CHECK(std::abs(d1[g.N - 1]) < 1e-13);
    // interior values are reproduced verbatim
    CHECK((full.segment(1, g.N - 2) - v).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("clamped recipe: smallest eigenvalue of D4 matches the clamped beam") {
  // oracle: lambda = b^4 with cos(2b) cosh(2b) = 1, found by 1D bisection
  auto chareq = [](double b) { return std::cos(2.0 * b) * std::cosh(2.0 * b) - 1.0; };
  double lo = 1.5, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chareq(lo) * chareq(mid) <= 0.0) hi = mid; else lo = mid;
  }
  const double beam = std::pow(0.5 * (lo + hi), 4);
  CHECK(beam == doctest::Approx(31.285243858777).epsilon(1e-10));

  const SpectralGrid g = build_grid(40);
  const BcRecipe bc = apply_bc(g, BcKind::clamped);
  Eigen::EigenSolver<Eigen::MatrixXd> es(bc.reduced_d4);
  double smallest = 1e300;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const auto ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) < 1e-6 * std::abs(ev)) smallest = std::min(smallest, ev.real());
  }
  CHECK(smallest == doctest::Approx(beam).epsilon(1e-3 / beam));
}

TEST_CASE("unknown bc kind") {
  CHECK_THROWS_AS(parse_bc_kind("periodic"), UsageError);
  CHECK(parse_bc_kind("clamped") == BcKind::clamped);
}
