#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vfb/continuation.hpp"
#include "vfb/evolve.hpp"

using namespace vfb;

TEST_CASE("trivial helix is steady under the evolution") {
  ProblemParams p{Geometry::Euclidean, 0.3, 0.5, 0.0, 1, 8};
  const FourierProfile f(8, 1);
  const auto rep = steadiness_error(p, f, 0.05, 1e-3);
  CHECK(rep.max_rel_error < 1e-12);
  CHECK(rep.dt_used == 1e-3);
  CHECK(rep.halvings == 0);
  REQUIRE(rep.checkpoint_times.size() >= 5);
  REQUIRE(rep.checkpoint_times.size() == rep.checkpoint_errors.size());
  CHECK(rep.checkpoint_times.back() == Catch::Approx(0.05).margin(1e-12));
}

TEST_CASE("a wrong rotation rate is detected") {
  // The helix rotates at Omega_R; certifying against Omega_R + 0.1 must fail
  // by roughly |lambda|·t.
  ProblemParams p{Geometry::Euclidean, 0.3, 0.5, 0.1, 1, 8};
  const FourierProfile f(8, 1);
  const auto rep = steadiness_error(p, f, 0.05, 1e-3);
  CHECK(rep.max_rel_error > 1e-4);
}

TEST_CASE("branch points are certified steady") {
  EigenRadius eig;
  for (const auto& e : eigen_radii(3, Geometry::Hyperbolic, 0.0))
    if (e.branch == RadiusBranch::minus && e.admissible) eig = e;
  REQUIRE(eig.admissible);
  const auto [p0, f0] = initial_guess(eig, 48, 0.01);
  const auto bp = newton_correct(p0, f0, eig, 0.01);
  const auto rep = steadiness_error(bp.params, bp.f, 0.02, 5e-4);
  CHECK(rep.max_rel_error < 1e-10);
}

TEST_CASE("unresolved profiles are rejected") {
  ProblemParams p{Geometry::Euclidean, 0.0, 0.5, 0.0, 1, 4};
  FourierProfile f(4, 1);
  f.set(4, 0.1);  // energy at the cutoff mode
  CHECK_THROWS_AS(steadiness_error(p, f, 0.05, 1e-3), DomainError);
}

TEST_CASE("step and horizon guards") {
  ProblemParams p{Geometry::Euclidean, 0.0, 0.5, 0.0, 1, 4};
  const FourierProfile f(4, 1);
  CHECK_THROWS_AS(steadiness_error(p, f, -0.1, 1e-3), ConfigError);
  CHECK_THROWS_AS(steadiness_error(p, f, 0.05, 0.0), ConfigError);
  CHECK_THROWS_AS(steadiness_error(p, f, 0.04, 0.1), ConfigError);  // zero steps
}

TEST_CASE("a profile crossing the disc boundary diverges after halvings") {
  ProblemParams p{Geometry::Hyperbolic, 0.0, 0.9, 0.0, 1, 8};
  FourierProfile f(8, 1);
  f.set(1, 0.15);  // |z| reaches past 1 during the flow
  CHECK_THROWS_AS(steadiness_error(p, f, 0.5, 1e-3), DivergenceError);
}
