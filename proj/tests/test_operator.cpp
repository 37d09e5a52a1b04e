#include <catch2/catch_amalgamated.hpp>

#include "vfb/operator_g.hpp"
#include "vfb/spectral.hpp"

using namespace vfb;

TEST_CASE("parameter validation") {
  ProblemParams p{Geometry::Euclidean, 0.0, 1.0, 0.0, 1, 8};
  CHECK_NOTHROW(p.validate());
  p.m = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.m = 1;
  p.M = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.M = 8;
  p.geometry = Geometry::Hyperbolic;
  p.R = 1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("dealiased grid size") {
  CHECK(dealiased_grid_size(3, 1) == 12);
  CHECK(dealiased_grid_size(48, 3) == 192);   // already a multiple of 3
  CHECK(dealiased_grid_size(32, 3) == 129);   // rounded up to a multiple of 3
  CHECK(dealiased_grid_size(5, 7) == 21);     // 20 → 21
}

TEST_CASE("residual matches pinned Euclidean values") {
  // geometry=euclidean a=0.5 R=0.8 lambda=0.1, f1=0.02 f2=0.03 f-2=-0.01, M=3
  ProblemParams p{Geometry::Euclidean, 0.5, 0.8, 0.1, 1, 3};
  FourierProfile f(3, 1);
  f.set(1, 0.02);
  f.set(2, 0.03);
  f.set(-2, -0.01);
  const auto G = eval_G(p, f);
  const double pins[7] = {-5.7347285949962038e-05, -0.051647531755311948,
                          -0.011502687421760322,  0.074361599586650368,
                          0.009238538753254099,   0.10865482814499924,
                          -0.0046051662699363215};
  for (int n = -3; n <= 3; ++n)
    CHECK(G.at(n) == Catch::Approx(pins[n + 3]).margin(1e-14));
}

TEST_CASE("residual matches pinned Hyperbolic values") {
  // geometry=hyperbolic a=0.7 R=0.6 lambda=-0.05, f1=0.01 f-1=0.02, M=3
  ProblemParams p{Geometry::Hyperbolic, 0.7, 0.6, -0.05, 1, 3};
  FourierProfile f(3, 1);
  f.set(1, 0.01);
  f.set(-1, 0.02);
  const auto G = eval_G(p, f);
  const double pins[7] = {3.9695462892647138e-05, 0.0010705676504512752,
                          0.0009442729513821082,  -0.025418548604252057,
                          0.098091352423311309,   0.0049139865304693702,
                          0.00019068722691355};
  for (int n = -3; n <= 3; ++n)
    CHECK(G.at(n) == Catch::Approx(pins[n + 3]).margin(1e-14));
}

TEST_CASE("m-fold residual stays in the mode class (pinned)") {
  // geometry=hyperbolic a=0 R=R3 lambda=0.003, f3=0.01 f-3=0.02, M=6, m=3
  const double R3 = std::sqrt((11.0 - 2.0 * std::sqrt(24.0)) / 5.0);
  ProblemParams p{Geometry::Hyperbolic, 0.0, R3, 0.003, 3, 6};
  FourierProfile f(6, 3);
  f.set(3, 0.01);
  f.set(-3, 0.02);
  const auto G = eval_G(p, f);
  CHECK(G.at(-6) == Catch::Approx(0.00037107868875723392).margin(1e-14));
  CHECK(G.at(-3) == Catch::Approx(0.0090164848712306345).margin(1e-14));
  CHECK(G.at(0) == Catch::Approx(-0.0028924811118634765).margin(1e-14));
  CHECK(G.at(3) == Catch::Approx(0.21294191178427982).margin(1e-13));
  CHECK(G.at(6) == Catch::Approx(0.0055603517964833401).margin(1e-14));
  for (int n : {-5, -4, -2, -1, 1, 2, 4, 5})
    CHECK(std::abs(G.at(n)) < 1e-14);
}

TEST_CASE("trivial solutions annihilate the residual") {
  for (double R : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    for (double a : {0.0, 0.5, 1.0, 3.0}) {
      ProblemParams p{Geometry::Euclidean, a, R, 0.0, 1, 16};
      CHECK(eval_G(p, FourierProfile(16, 1)).inf_norm() < 1e-12);
    }
  }
  for (double R : {0.25, 0.5, 0.9}) {
    ProblemParams p{Geometry::Hyperbolic, 1.0, R, 0.0, 1, 16};
    CHECK(eval_G(p, FourierProfile(16, 1)).inf_norm() < 1e-12);
  }
}

TEST_CASE("residual input guards") {
  ProblemParams p{Geometry::Euclidean, 0.0, 1.0, 0.0, 1, 4};
  FourierProfile f(4, 1);
  f.set(0, 0.1);  // mean perturbation is not part of the unknowns
  CHECK_THROWS_AS(eval_G(p, f), ConfigError);

  // hyperbolic denominator 1 − |R+f|² within 1e−8 of zero
  ProblemParams pb{Geometry::Hyperbolic, 0.0, 0.999999999, 0.0, 1, 4};
  CHECK_THROWS_AS(eval_G(pb, FourierProfile(4, 1)), DomainError);
  pb.R = 0.99999;  // 1 − R² ≈ 2e−5: fine
  CHECK_NOTHROW(eval_G(pb, FourierProfile(4, 1)));
}

TEST_CASE("finer evaluation grids converge (rational tail below roundoff at 2x)") {
  // The functional has a rational term, so its spectrum is not band-limited:
  // the base grid carries a small aliasing tail that dies geometrically with
  // the oversampling factor.
  ProblemParams p{Geometry::Euclidean, 0.5, 0.8, 0.1, 1, 3};
  FourierProfile f(3, 1);
  f.set(1, 0.02);
  f.set(2, 0.03);
  f.set(-2, -0.01);
  const auto g1 = eval_G(p, f, 1);
  const auto g2 = eval_G(p, f, 2);
  const auto g4 = eval_G(p, f, 4);
  CHECK((g1 - g2).inf_norm() < 1e-6);   // tail visible on the base grid
  CHECK((g2 - g4).inf_norm() < 1e-14);  // converged to roundoff at 2x
}

TEST_CASE("linearization agrees with the per-mode block") {
  for (Geometry g : {Geometry::Euclidean, Geometry::Hyperbolic}) {
    const double R = (g == Geometry::Euclidean) ? 1.3 : 0.7;
    const double a = 0.4;
    ProblemParams p{g, a, R, 0.0, 1, 6};
    for (int n = 1; n <= 5; ++n) {
      const auto B = linear_block(n, g, a, R);
      // symmetric (b, c) = (a_n + a_{−n}, a_n − a_{−n}) coordinates:
      // h = wⁿ + w̄ⁿ is (b, c) = (2, 0); h = wⁿ − w̄ⁿ is (0, 2).
      FourierProfile hb(6, 1), hc(6, 1);
      hb.set(n, 1.0);
      hb.set(-n, 1.0);
      hc.set(n, 1.0);
      hc.set(-n, -1.0);
      const auto Lb = apply_linearized(p, hb);
      const auto Lc = apply_linearized(p, hc);
      // L maps b ↦ entries[0][0]·b + entries[0][1]·c etc. in the same basis.
      CHECK(Lb.at(n) + Lb.at(-n) == Catch::Approx(2.0 * B.entries[0][0]).margin(1e-12));
      CHECK(Lb.at(n) - Lb.at(-n) == Catch::Approx(2.0 * B.entries[1][0]).margin(1e-12));
      CHECK(Lc.at(n) + Lc.at(-n) == Catch::Approx(2.0 * B.entries[0][1]).margin(1e-12));
      CHECK(Lc.at(n) - Lc.at(-n) == Catch::Approx(2.0 * B.entries[1][1]).margin(1e-12));
    }
  }
}

TEST_CASE("linearization agrees with finite differences of the residual") {
  ProblemParams p{Geometry::Hyperbolic, 0.5, 0.6, 0.0, 1, 8};
  FourierProfile h(8, 1);
  h.set(1, 0.31);
  h.set(-2, -0.47);
  h.set(5, 0.11);
  const double eps = 1e-6;
  const auto Gp = eval_G(p, eps * h);
  const auto Gm = eval_G(p, (-eps) * h);
  const auto fd = (1.0 / (2.0 * eps)) * (Gp - Gm);
  const auto lin = apply_linearized(p, h);
  CHECK((fd - lin).inf_norm() < 1e-6 * std::max(1.0, lin.inf_norm()));
}
