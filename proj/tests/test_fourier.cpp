#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <limits>
#include <numbers>

#include "vfb/fourier.hpp"

using namespace vfb;

TEST_CASE("profile storage and access") {
  FourierProfile f(3, 1);
  REQUIRE(f.M == 3);
  REQUIRE(f.c.size() == 7);
  f.set(2, 0.5);
  f.set(-3, -1.25);
  CHECK(f.at(2) == 0.5);
  CHECK(f.at(-3) == -1.25);
  CHECK(f.at(0) == 0.0);
  // out-of-range reads are zero, out-of-range writes throw
  CHECK(f.at(4) == 0.0);
  CHECK(f.at(-17) == 0.0);
  CHECK_THROWS_AS(f.set(4, 1.0), ConfigError);
  CHECK_THROWS_AS(f.set(-4, 1.0), ConfigError);
}

TEST_CASE("norms and arithmetic") {
  FourierProfile a(2), b(2);
  a.set(1, 3.0);
  a.set(-2, -4.0);
  b.set(1, 1.0);
  CHECK(a.inf_norm() == 4.0);
  CHECK(a.two_norm() == Catch::Approx(5.0).epsilon(1e-15));
  const auto sum = a + b;
  CHECK(sum.at(1) == 4.0);
  CHECK(sum.at(-2) == -4.0);
  const auto diff = a - b;
  CHECK(diff.at(1) == 2.0);
  const auto scaled = 0.5 * a;
  CHECK(scaled.at(-2) == -2.0);
}

TEST_CASE("synthesize/analyze roundtrip recovers coefficients") {
  FourierProfile f(5, 1);
  f.set(-5, 0.21);
  f.set(-2, -0.4);
  f.set(0, 1.1);
  f.set(1, 0.37);
  f.set(3, -0.052);
  f.set(5, 0.004);
  const int J = 4 * f.M;
  const auto g = synthesize(f, J);
  REQUIRE(g.size() == J);
  const auto back = analyze(g, f.M, 1);
  for (int n = -5; n <= 5; ++n)
    CHECK(back.at(n) == Catch::Approx(f.at(n)).margin(1e-14));
}

TEST_CASE("grid too small for the truncation is rejected") {
  FourierProfile f(4);
  CHECK_THROWS_AS(synthesize(f, 8), ConfigError);   // need >= 2M+1 = 9
  CHECK_NOTHROW(synthesize(f, 9));
  GridValues g;
  g.v.assign(8, {0, 0});
  CHECK_THROWS_AS(analyze(g, 4), ConfigError);
}

TEST_CASE("analyze flags genuinely complex coefficient data") {
  // g(θ) = i e^{iθ} has coefficient i at mode 1: far outside the
  // real-coefficient class.
  const int J = 16;
  GridValues g;
  g.v.resize(J);
  for (int j = 0; j < J; ++j)
    g.v[j] = std::complex<double>(0.0, 1.0) * std::polar(1.0, grid_theta(j, J));
  CHECK_THROWS_AS(analyze(g, 3), DomainError);
  // an explicit infinite tolerance disables the check and keeps real parts
  const auto p = analyze(g, 3, 1, std::numeric_limits<double>::infinity());
  CHECK(p.at(1) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("wderiv produces the derived series") {
  FourierProfile f(3);
  f.set(2, 0.5);
  f.set(-1, 2.0);
  const auto d1 = wderiv(f, 1);   // n f_n
  CHECK(d1.at(2) == 1.0);
  CHECK(d1.at(-1) == -2.0);
  const auto d2 = wderiv(f, 2);   // n(n−1) f_n
  CHECK(d2.at(2) == 1.0);
  CHECK(d2.at(-1) == 4.0);
  CHECK_THROWS_AS(wderiv(f, 3), ConfigError);
}

TEST_CASE("conj_reflect mirrors the modes") {
  FourierProfile f(2);
  f.set(1, 0.25);
  f.set(-2, 0.75);
  const auto r = conj_reflect(f);
  CHECK(r.at(-1) == 0.25);
  CHECK(r.at(2) == 0.75);
  CHECK(r.at(1) == 0.0);
}

TEST_CASE("project_mfold keeps the mode class and reports discarded energy") {
  FourierProfile f(6);
  f.set(3, 1.0);
  f.set(-6, 2.0);
  f.set(2, 0.3);
  f.set(-1, -0.4);
  double removed = 0.0;
  const auto p = project_mfold(f, 3, &removed);
  CHECK(p.mfold == 3);
  CHECK(p.at(3) == 1.0);
  CHECK(p.at(-6) == 2.0);
  CHECK(p.at(2) == 0.0);
  CHECK(p.at(-1) == 0.0);
  CHECK(removed == Catch::Approx(0.09 + 0.16).epsilon(1e-14));
  CHECK_THROWS_AS(project_mfold(f, 0), ConfigError);
}

TEST_CASE("grid nodes are equispaced on [0, 2pi)") {
  const int J = 12;
  CHECK(grid_theta(0, J) == 0.0);
  CHECK(grid_theta(3, J) == Catch::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(grid_theta(J - 1, J) < 2.0 * std::numbers::pi);
}
