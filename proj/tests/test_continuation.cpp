#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vfb/continuation.hpp"

using namespace vfb;

namespace {

EigenRadius eigenpair(Geometry g, double a, int n, RadiusBranch br) {
  for (const auto& e : eigen_radii(n, g, a))
    if (e.branch == br && e.admissible) return e;
  throw std::runtime_error("eigenpair not found");
}

} // namespace

TEST_CASE("initial guess lies along the kernel direction") {
  const auto eig = eigenpair(Geometry::Hyperbolic, 0.0, 3, RadiusBranch::minus);
  const auto kv = kernel_vector(3, Geometry::Hyperbolic, 0.0, eig.R);
  const auto [p, f] = initial_guess(eig, 12, 0.02);
  CHECK(p.lambda == 0.0);
  CHECK(p.R == eig.R);
  CHECK(p.m == 3);
  CHECK(f.at(3) == Catch::Approx(0.02 * kv.beta).margin(1e-15));
  CHECK(f.at(-3) == Catch::Approx(0.02).margin(1e-15));
  CHECK(f.two_norm() == Catch::Approx(0.02 * std::sqrt(kv.beta * kv.beta + 1.0)).margin(1e-15));
}

TEST_CASE("Newton correction: pinned hyperbolic m=3 point at eta=0.01") {
  const auto eig = eigenpair(Geometry::Hyperbolic, 0.0, 3, RadiusBranch::minus);
  const auto [p0, f0] = initial_guess(eig, 48, 0.01);
  const auto bp = newton_correct(p0, f0, eig, 0.01);
  CHECK(bp.params.lambda == Catch::Approx(0.0010087935614049356).margin(1e-13));
  CHECK(bp.params.R == Catch::Approx(0.49044428067698281).margin(1e-13));
  CHECK(bp.f.at(3) == Catch::Approx(-0.00042480584707069603).margin(1e-12));
  CHECK(bp.f.at(-3) == Catch::Approx(0.0099999866921367843).margin(1e-12));
  CHECK(bp.residual_inf < 1e-12);
  CHECK(bp.newton_iters <= 4);
  CHECK(recheck_residual(bp, 2) < 1e-11);
  // the amplitude constraint holds at the solution
  const auto kv = kernel_vector(3, Geometry::Hyperbolic, 0.0, eig.R);
  CHECK(kv.beta * bp.f.at(3) + bp.f.at(-3) ==
        Catch::Approx(0.01 * (kv.beta * kv.beta + 1.0)).margin(1e-12));
}

TEST_CASE("Newton correction: pinned Euclidean m=1 point at eta=0.01") {
  const auto eig = eigenpair(Geometry::Euclidean, 0.0, 1, RadiusBranch::minus);
  const auto [p0, f0] = initial_guess(eig, 16, 0.01);
  const auto bp = newton_correct(p0, f0, eig, 0.01);
  CHECK(bp.params.lambda == Catch::Approx(-9.9984972332636238e-05).margin(1e-13));
  CHECK(bp.params.R == Catch::Approx(1.0001000406869338).margin(1e-12));
  CHECK(bp.residual_inf < 1e-12);
  CHECK(bp.newton_iters <= 6);
}

TEST_CASE("argument guards") {
  const auto eig = eigenpair(Geometry::Hyperbolic, 0.0, 3, RadiusBranch::minus);
  const auto [p0, f0] = initial_guess(eig, 12, 0.01);
  CHECK_THROWS_AS(newton_correct(p0, f0, eig, 0.0), ConfigError);
  CHECK_THROWS_AS(trace_branch(eig, 12, 0.02, 0), ConfigError);
  CHECK_THROWS_AS(trace_branch(eig, 12, 0.0, 4), ConfigError);
  CHECK_THROWS_AS(trace_branch(eig, 2, 0.02, 4), ConfigError);  // M < m
  EigenRadius bad = eig;
  bad.admissible = false;
  CHECK_THROWS_AS(initial_guess(bad, 12, 0.01), ConfigError);
}

TEST_CASE("branch trace: monotone amplitudes, converged points, pinned endpoint") {
  const auto eig = eigenpair(Geometry::Hyperbolic, 0.0, 3, RadiusBranch::minus);
  const auto br = trace_branch(eig, 48, 0.02, 4);
  REQUIRE(br.complete);
  REQUIRE(br.points.size() == 4);
  CHECK(br.direction == 1);
  CHECK(br.beta == Catch::Approx(-0.042449234640745334).margin(1e-12));
  for (size_t i = 0; i < br.points.size(); ++i) {
    const auto& bp = br.points[i];
    CHECK(bp.eta == Catch::Approx(0.005 * (i + 1)).margin(1e-15));
    CHECK(bp.residual_inf < 1e-12);
    CHECK(recheck_residual(bp, 2) < 1e-11);
    CHECK_FALSE(bp.cond_warning);
    CHECK(bp.kernel_angle < 0.05);  // profile stays nearly tangent to the kernel
  }
  CHECK(br.points.back().params.R == Catch::Approx(0.49083386262506418).margin(1e-12));
  CHECK(br.points.back().params.lambda == Catch::Approx(0.0040375532036404441).margin(1e-12));
}

TEST_CASE("branch trace runs in both amplitude directions symmetrically") {
  const auto eig = eigenpair(Geometry::Euclidean, 0.0, 1, RadiusBranch::minus);
  const auto fwd = trace_branch(eig, 16, 0.01, 2);
  const auto bwd = trace_branch(eig, 16, -0.01, 2);
  REQUIRE(fwd.complete);
  REQUIRE(bwd.complete);
  CHECK(bwd.direction == -1);
  CHECK(bwd.points.back().eta == Catch::Approx(-0.01).margin(1e-15));
  // f → −f symmetry: λ and R are even in η
  CHECK(bwd.points.back().params.lambda ==
        Catch::Approx(fwd.points.back().params.lambda).margin(1e-10));
  CHECK(bwd.points.back().params.R ==
        Catch::Approx(fwd.points.back().params.R).margin(1e-10));
  CHECK(bwd.points.back().f.at(1) ==
        Catch::Approx(-fwd.points.back().f.at(1)).margin(1e-10));
}

TEST_CASE("an unreachable amplitude leaves a converged prefix") {
  const auto eig = eigenpair(Geometry::Hyperbolic, 0.0, 3, RadiusBranch::minus);
  const auto br = trace_branch(eig, 24, 2.0, 2);  // eta = 1 leaves the disc
  CHECK_FALSE(br.complete);
  CHECK_FALSE(br.error.empty());
  CHECK(br.points.size() < 2);
}
