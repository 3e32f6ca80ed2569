#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "brinkstab/errors.hpp"
#include "brinkstab/linstab.hpp"
#include "oracles/compound_os.hpp"

using namespace brinkstab;
using oracles::Cx;

TEST_CASE("leading mode at R=10000, a=1 matches the shooting oracle") {
  SpectrumPolicy pol;
  pol.want_vectors = true;
  const EigenSolution sol = os_spectrum({0.0, 10000.0, 1.0, 64}, pol);
  REQUIRE(!sol.values.empty());
  const std::complex<double> c = sol.values.front();
  CHECK(c.imag() > 0.0);  // unstable above the critical Reynolds number

  // independent compound-matrix refinement starting from a coarse guess
  const Cx cm = oracles::compound_refine(0.0, 10000.0, 1.0, Cx(0.237, 0.0037), 8000);
  CHECK(std::abs(c - cm) < 1e-6);

  // classical tabulated eigenvalue for this configuration
  CHECK(c.real() == doctest::Approx(0.23752649).epsilon(2e-7));
  CHECK(c.imag() == doctest::Approx(0.00373967).epsilon(2e-5));

  for (double r : sol.residuals) CHECK(r < 1e-8);
}

TEST_CASE("spectrum at R=2000 is stable and the oracle counts no zeros") {
  const EigenSolution sol = os_spectrum({0.0, 2000.0, 1.0, 64});
  REQUIRE(!sol.values.empty());
  CHECK(sol.values.front().imag() < 0.0);

  CHECK(oracles::compound_count(0.0, 2000.0, 1.0, 0.0, 1.0, 1e-4, 0.5) == 0);
  // while the unstable configuration holds exactly one mode in the box
  CHECK(oracles::compound_count(0.0, 10000.0, 1.0, 0.0, 0.5, 1e-4, 0.5) == 1);
}

TEST_CASE("zero base flow only dissipates") {
  const int N = 48;
  Eigen::VectorXd U = Eigen::VectorXd::Zero(N - 2);
  Eigen::VectorXd d2U = Eigen::VectorXd::Zero(N - 2);
  for (double R : {100.0, 5000.0}) {
    const EigenSolution sol = os_spectrum_with_profile(U, d2U, 0.0, R, 1.3, N);
    for (const auto& c : sol.values) CHECK(c.imag() < 0.0);
  }
}

TEST_CASE("retained modes persist under N -> N+8") {
  SpectrumPolicy pol;
  pol.persistence_check = true;
  const EigenSolution sol = os_spectrum({0.0, 10000.0, 1.0, 64}, pol);
  REQUIRE(!sol.values.empty());
  const EigenSolution ref = os_spectrum({0.0, 10000.0, 1.0, 72});
  for (const auto& c : sol.values) {
    double best = 1e300;
    for (const auto& c8 : ref.values) best = std::min(best, std::abs(c - c8));
    CHECK(best <= 1e-6 * std::max(1.0, std::abs(c)));
  }
}

TEST_CASE("neutral Reynolds number near the classical nose") {
  NeutralSearch s;
  s.N = 64;
  const double r = neutral_Re(0.0, 1.02, s);
  CHECK(r == doctest::Approx(5772.22).epsilon(5e-3));

  // far wavenumber: stable for every Reynolds number up to the cap
  NeutralSearch fast = s;
  fast.scan_points = 24;
  CHECK(neutral_Re(0.0, 5.0, fast) == kStableUpToCap);
}

TEST_CASE("drag raises the neutral curve at fixed wavenumber") {
  NeutralSearch s;
  s.N = 64;
  const double r0 = neutral_Re(0.0, 1.0, s);
  const double r1 = neutral_Re(1.0, 1.0, s);
  CHECK(r1 > r0);
  // dense R-sweep: growth at M=1 stays below growth at M=0 in between
  for (double R : {4000.0, 6000.0, 9000.0}) {
    CHECK(max_growth_rate(1.0, R, 1.0, 64) < max_growth_rate(0.0, R, 1.0, 64));
  }
}

TEST_CASE("critical point at M=0 and the monotone trend") {
  CriticalSearch s;
  s.N = 64;
  s.a_min = 0.6;
  s.a_max = 1.6;
  s.coarse_points = 10;
  s.a_tol = 1e-5;
  const CriticalPoint cp0 = critical_point_linear(0.0, s);
  CHECK(cp0.R_c == doctest::Approx(5772.22).epsilon(5e-3));
  CHECK(cp0.a_c == doctest::Approx(1.0206).epsilon(5e-3));
  CHECK(cp0.kind == ProblemKind::linear);
  CHECK(cp0.convergence < 1e-6);
  CHECK(cp0.converged);

  const CriticalPoint cp_half = critical_point_linear(0.5, s);
  const CriticalPoint cp1 = critical_point_linear(1.0, s);
  CHECK(cp_half.R_c > cp0.R_c);
  CHECK(cp_half.R_c < cp1.R_c);
}

TEST_CASE("oblique modes are never more dangerous than 2D ones") {
  NeutralSearch s;
  s.N = 64;
  s.scan_points = 28;
  for (double M : {0.0, 1.0}) {
    CriticalSearch cs;
    cs.N = 64;
    cs.a_min = 0.6;
    cs.a_max = 1.6;
    cs.coarse_points = 8;
    cs.a_tol = 1e-4;
    const double rc2d = critical_point_linear(M, cs).R_c;
    for (double a : {0.7, 1.0, 1.3}) {
      for (double b : {0.4, 0.8}) {
        const double r3d = oblique_neutral_Re(M, a, b, s);
        CHECK(r3d >= rc2d * (1.0 - 1e-8));
      }
    }
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(os_spectrum({0.0, 1000.0, -1.0, 64}), UsageError);
  CHECK_THROWS_AS(os_spectrum({0.0, -5.0, 1.0, 64}), UsageError);
  CHECK_THROWS_AS(os_spectrum({-1.0, 1000.0, 1.0, 64}), DomainError);
  CHECK_THROWS_AS(neutral_Re(0.0, 0.0), UsageError);
  CHECK_THROWS_AS(parse_problem_kind("bogus"), UsageError);
}

TEST_CASE("neutral curve table serializes with the sentinel") {
  NeutralSearch s;
  s.N = 64;
  s.scan_points = 20;
  const auto pts = neutral_curve(0.0, {1.02, 5.0}, s);
  const std::string text = neutral_curve_csv(pts);
  CHECK(text.rfind("M,a,Re_neutral\n", 0) == 0);
  CHECK(text.find("inf") != std::string::npos);
  CHECK_THROWS_AS(neutral_curve(0.0, {}, s), UsageError);
}
