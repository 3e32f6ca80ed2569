#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "brinkstab/baseflow.hpp"
#include "brinkstab/errors.hpp"
#include "brinkstab/spectral.hpp"

using namespace brinkstab;
namespace mp = boost::multiprecision;
using mp50 = mp::cpp_bin_float_50;

namespace {

// 50-digit evaluation of the defining formula, used as the reference for
// the double-precision branches.
double mp_profile(double M, double z) {
  const mp50 Mm = M, zm = z;
  const mp50 u = (cosh(Mm) - cosh(Mm * zm)) / (cosh(Mm) - 1);
  return u.convert_to<double>();
}

}  // namespace

TEST_CASE("derive_flow_params forms R and M") {
  FlowParams f = derive_flow_params({1, 1, 1, 1, 1, 1});
  CHECK(f.reynolds == doctest::Approx(1.0));
  CHECK(f.porous == doctest::Approx(1.0));

  f = derive_flow_params({1, 1, 1, 1, 0.5, 0.125});
  CHECK(f.reynolds == doctest::Approx(1.0));
  CHECK(f.porous == doctest::Approx(2.0));  // M^2 = phi L^2 / K = 4

  f = derive_flow_params({1000, 0.001, 0.01, 0.01, 1, 1});
  CHECK(f.reynolds == doctest::Approx(100.0));
}

TEST_CASE("derive_flow_params rejects bad inputs naming the field") {
  DimensionalParams p{1, 1, 1, 1, 1, 1};
  p.viscosity = 0.0;
  CHECK_THROWS_WITH_AS(derive_flow_params(p), doctest::Contains("viscosity"), DomainError);
  p = {1, 1, 1, 1, 1, 1};
  p.permeability = -2.0;
  CHECK_THROWS_WITH_AS(derive_flow_params(p), doctest::Contains("permeability"), DomainError);
  p = {1, 1, 1, 1, 1.5, 1};
  CHECK_THROWS_AS(derive_flow_params(p), DomainError);
}

TEST_CASE("profile limits and normalization") {
  // M -> 0 limit is the parabola
  CHECK(std::abs(eval_profile(1e-12, 0.5).U - 0.75) < 1e-9);
  for (double M : {0.0, 0.3, 2.0, 7.0, 40.0}) {
    CHECK(eval_profile(M, 0.0).U == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_profile(M, 1.0).U == 0.0);
    CHECK(eval_profile(M, -1.0).U == 0.0);
  }
  // frozen direct evaluation of the defining formula at M=2, z=1/2
  CHECK(eval_profile(2.0, 0.5).U == doctest::Approx(0.80338806675851814746).epsilon(1e-14));
}

TEST_CASE("profile domain errors") {
  CHECK_THROWS_AS(eval_profile(1.0, 1.0000001), DomainError);
  CHECK_THROWS_AS(eval_profile(-0.5, 0.0), DomainError);
}

TEST_CASE("small-M series matches the parabola") {
  double sup = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double z = -1.0 + 2.0 * i / 400.0;
    sup = std::max(sup, std::abs(eval_profile(1e-8, z).U - (1.0 - z * z)));
  }
  CHECK(sup < 1e-12);
}

TEST_CASE("symmetry: U even, U' odd") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> Md(0.0, 20.0), zd(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double M = Md(rng), z = zd(rng);
    const BaseFlow f(M);
    CHECK(std::abs(f.U(z) - f.U(-z)) < 1e-14);
    CHECK(std::abs(f.dU(z) + f.dU(-z)) < 1e-13);
  }
  CHECK(BaseFlow(3.7).dU(0.0) == 0.0);
}

TEST_CASE("derivatives are consistent with central differences") {
  // observed order of the FD error should be ~2 when h halves
  for (double M : {0.7, 4.0, 12.0}) {
    const BaseFlow f(M);
    for (double z : {-0.6, 0.11, 0.5}) {
      double err[2];
      for (int k = 0; k < 2; ++k) {
        const double h = 1e-3 / (1 << k);
        const double d1 = (f.U(z + h) - f.U(z - h)) / (2.0 * h);
        const double d2 = (f.U(z + h) - 2.0 * f.U(z) + f.U(z - h)) / (h * h);
        err[k] = std::abs(d1 - f.dU(z)) + std::abs(d2 - f.d2U(z));
      }
      const double order = std::log2(err[0] / err[1]);
      CHECK(order >= 1.9);
    }
  }
}

TEST_CASE("no overflow at extreme M") {
  const auto rows = profile_table(500.0, {-1.0, -0.999, -0.5, 0.0, 0.5, 0.999, 1.0});
  for (const auto& r : rows) {
    CHECK(std::isfinite(r.U));
    CHECK(r.U >= 0.0);
    CHECK(r.U <= 1.0);
    CHECK(std::isfinite(r.dU));
    CHECK(std::isfinite(r.d2U));
  }
}

TEST_CASE("profile_table matches pointwise evaluation and the 50-digit oracle") {
  const SpectralGrid g = build_grid(9);
  std::vector<double> nodes(g.nodes.data(), g.nodes.data() + g.N);
  const auto rows = profile_table(5.0, nodes);
  REQUIRE(rows.size() == nodes.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto s = eval_profile(5.0, nodes[i]);
    CHECK(rows[i].U == s.U);
    CHECK(rows[i].dU == s.dU);
  }
  // near-wall values at M=10 against the 50-digit reference
  for (double z : {0.95, 0.99, 0.999, -0.999, -0.97}) {
    const double ref = mp_profile(10.0, z);
    CHECK(eval_profile(10.0, z).U == doctest::Approx(ref).epsilon(1e-13));
  }
  // and the boundary rows of a tiny-M table
  const auto edge = profile_table(1e-9, {-1.0, 0.0, 1.0});
  CHECK(edge[0].U == 0.0);
  CHECK(edge[1].U == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(edge[2].U == 0.0);
}

TEST_CASE("profile_table usage errors") {
  CHECK_THROWS_AS(profile_table(1.0, {}), UsageError);
  CHECK_THROWS_AS(profile_table(1.0, {0.0, 2.0}), DomainError);
}

TEST_CASE("csv export shape and precision") {
  const auto rows = profile_table(0.0, {-1.0, 0.0, 1.0});
  const std::string text = profile_table_csv(rows);
  CHECK(text.rfind("z,U,dU,d2U\n", 0) == 0);
  // 1/3 must round-trip through the printed representation
  const auto r2 = profile_table(2.0, {1.0 / 3.0});
  const std::string t2 = profile_table_csv(r2);
  const auto pos = t2.find('\n') + 1;
  const auto comma = t2.find(',', pos);
  CHECK(std::stod(t2.substr(pos, comma - pos)) == 1.0 / 3.0);
}
