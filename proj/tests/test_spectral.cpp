#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "vfb/operator_g.hpp"
#include "vfb/spectral.hpp"

using namespace vfb;

namespace {
const double R3H = std::sqrt((11.0 - 2.0 * std::sqrt(24.0)) / 5.0);
}

TEST_CASE("branch names round-trip") {
  CHECK(branch_name(RadiusBranch::plus) == "plus");
  CHECK(branch_name(RadiusBranch::minus) == "minus");
  CHECK(parse_branch("plus") == RadiusBranch::plus);
  CHECK(parse_branch("minus") == RadiusBranch::minus);
  CHECK_THROWS_AS(parse_branch("middle"), ConfigError);
}

TEST_CASE("q parameter pinned value") {
  // q = 2(1 ∓ R²)/(1 ± R²) − a
  CHECK(q_parameter(Geometry::Hyperbolic, 0.0, R3H) ==
        Catch::Approx(3.2659863237109055).margin(1e-14));
  CHECK(q_parameter(Geometry::Euclidean, 0.5, 1.0) == Catch::Approx(-0.5).margin(1e-14));
}

TEST_CASE("per-mode block entries and determinant") {
  const int n = 3;
  const double a = 0.4, R = 0.7;
  for (Geometry g : {Geometry::Euclidean, Geometry::Hyperbolic}) {
    const auto B = linear_block(n, g, a, R);
    const double sp = sign_p(g), sm = sign_m(g);
    const double den = 1.0 + sp * R * R;
    const double q = q_parameter(g, a, R);
    CHECK(B.entries[0][0] == Catch::Approx(sm * 4.0 * R * R / (den * den) + n * n).margin(1e-14));
    CHECK(B.entries[0][1] == Catch::Approx(q * n).margin(1e-14));
    CHECK(B.entries[1][0] == Catch::Approx(q * n).margin(1e-14));
    CHECK(B.entries[1][1] == Catch::Approx(static_cast<double>(n) * n).margin(1e-14));
    CHECK(B.det() == Catch::Approx(B.entries[0][0] * B.entries[1][1] -
                                   B.entries[0][1] * B.entries[1][0])
                         .margin(1e-12));
  }
}

TEST_CASE("closed-form bifurcation radii: pinned Euclidean a=3 ladder") {
  struct Pin {
    int n;
    double R;
  };
  const Pin pins[] = {{2, 0.51108108452939383}, {3, 0.91818861396624474},
                      {4, 1.6226500429406989}};
  for (const auto& pin : pins) {
    const auto v = eigen_radii(pin.n, Geometry::Euclidean, 3.0);
    bool found = false;
    for (const auto& e : v)
      if (e.branch == RadiusBranch::minus && e.admissible) {
        CHECK(e.R == Catch::Approx(pin.R).margin(1e-13));
        // r² pin for n=2 specifically
        if (pin.n == 2) CHECK(e.r_squared == Catch::Approx(0.26120387496374142).margin(1e-13));
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("Euclidean a=0 has the circle as its only eigenpair") {
  for (int n = 1; n <= 20; ++n) {
    for (const auto& e : eigen_radii(n, Geometry::Euclidean, 0.0)) {
      if (n == 1) {
        CHECK(e.admissible);
        CHECK(e.R == Catch::Approx(1.0).margin(1e-13));
      } else {
        CHECK_FALSE(e.admissible);
      }
    }
  }
}

TEST_CASE("Euclidean a=0.5 plus branch reproduces R = sqrt(1/3)") {
  const auto v = eigen_radii(1, Geometry::Euclidean, 0.5);
  bool found = false;
  for (const auto& e : v)
    if (e.branch == RadiusBranch::plus && e.admissible) {
      CHECK(e.R == Catch::Approx(std::sqrt(1.0 / 3.0)).margin(1e-13));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("Hyperbolic a=0 minus ladder: pinned values, monotone toward 1") {
  double prev = 0.0;
  for (int n = 3; n <= 50; ++n) {
    const auto v = eigen_radii(n, Geometry::Hyperbolic, 0.0);
    double R = -1.0;
    for (const auto& e : v)
      if (e.branch == RadiusBranch::minus && e.admissible) R = e.R;
    REQUIRE(R > 0.0);
    CHECK(R > prev);
    CHECK(R < 1.0);
    if (n == 3) CHECK(R == Catch::Approx(R3H).margin(1e-13));
    if (n == 50) CHECK(R == Catch::Approx(0.96593201880543787).margin(1e-10));
    prev = R;
  }
  // n = 1, 2 admit no hyperbolic bifurcation radius
  for (int n : {1, 2})
    for (const auto& e : eigen_radii(n, Geometry::Hyperbolic, 0.0)) CHECK_FALSE(e.admissible);
}

TEST_CASE("degenerate denominator n = a + 2 is flagged, not thrown") {
  // hyperbolic a=6: n² − (a+2)² = 0 at n = 8
  const auto v = eigen_radii(8, Geometry::Hyperbolic, 6.0);
  REQUIRE(v.size() == 2);
  for (const auto& e : v) CHECK_FALSE(e.admissible);
}

TEST_CASE("polished radii sit on the determinant zero set") {
  for (int n : {3, 5, 8}) {
    const auto v = eigen_radii(n, Geometry::Hyperbolic, 0.0);
    for (const auto& e : v)
      if (e.admissible)
        CHECK(std::abs(linear_block(n, Geometry::Hyperbolic, 0.0, e.R).det()) <
              1e-10 * (static_cast<double>(n) * n * n * n + 1.0));
  }
}

TEST_CASE("admissible mode set with diagnostics (hyperbolic plus, a=6)") {
  const auto am = admissible_modes(Geometry::Hyperbolic, 6.0, RadiusBranch::plus, 12);
  CHECK(am.modes == std::vector<int>{1, 2, 3});
  CHECK_FALSE(am.diagnostics.empty());
}

TEST_CASE("kernel vector: pinned beta and structure") {
  const auto kv = kernel_vector(3, Geometry::Hyperbolic, 0.0, R3H);
  CHECK(kv.beta == Catch::Approx(-0.042449234640745334).margin(1e-12));
  CHECK(kv.profile.M == 3);
  CHECK(kv.profile.mfold == 3);
  CHECK(kv.profile.at(3) == kv.beta);
  CHECK(kv.profile.at(-3) == 1.0);
  // Euclidean a=0 circle: q = 0 so beta = 1 (kernel w + w̄) and the range
  // condition reduces to d_1 + d_{−1} = 0.
  const auto kc = kernel_vector(1, Geometry::Euclidean, 0.0, 1.0);
  CHECK(kc.beta == Catch::Approx(1.0).margin(1e-12));
  FourierProfile d(1, 1);
  d.set(1, 0.3);
  d.set(-1, 0.4);
  CHECK(range_defect(d, 1, Geometry::Euclidean, 0.0, 1.0) ==
        Catch::Approx(0.7).margin(1e-14));
  // off-eigenpair radius violates the determinant precondition
  CHECK_THROWS_AS(kernel_vector(3, Geometry::Hyperbolic, 0.0, 0.6), DomainError);
}

TEST_CASE("range defect annihilates images and rejects the kernel") {
  const int N = 3;
  ProblemParams p{Geometry::Hyperbolic, 0.0, R3H, 0.0, 1, 8};
  FourierProfile h(8, 1);
  h.set(1, 0.7);
  h.set(-3, -0.2);
  h.set(3, 0.45);
  h.set(5, 0.13);
  const auto img = apply_linearized(p, h);
  CHECK(std::abs(range_defect(img, N, Geometry::Hyperbolic, 0.0, R3H)) <
        1e-10 * (1.0 + img.inf_norm()));
  const auto kv = kernel_vector(N, Geometry::Hyperbolic, 0.0, R3H);
  CHECK(std::abs(range_defect(kv.profile, N, Geometry::Hyperbolic, 0.0, R3H)) > 0.5);
}

TEST_CASE("transversality: pinned certificates") {
  // Euclidean circle: LHS = 1, RHS = −1
  const auto tc = transversality_ok(1, Geometry::Euclidean, 0.0, 1.0);
  CHECK(tc.lhs == Catch::Approx(1.0).margin(1e-12));
  CHECK(tc.rhs == Catch::Approx(-1.0).margin(1e-12));
  CHECK(tc.ok);
  CHECK_FALSE(tc.inconclusive);
  // hyperbolic m=3 values (frozen)
  const auto th = transversality_ok(3, Geometry::Hyperbolic, 0.0, R3H);
  CHECK(th.lhs == Catch::Approx(0.001801937521585036).margin(1e-12));
  CHECK(th.rhs == Catch::Approx(-0.60606462627195823).margin(1e-12));
  CHECK(th.ok);
  // whole hyperbolic ladder
  for (int n = 3; n <= 20; ++n) {
    const auto v = eigen_radii(n, Geometry::Hyperbolic, 0.0);
    for (const auto& e : v)
      if (e.admissible) CHECK(transversality_ok(n, Geometry::Hyperbolic, 0.0, e.R).ok);
  }
}

TEST_CASE("operator-level transversality certificate is nonzero") {
  const auto dr = dR_linearized_on_kernel(3, Geometry::Hyperbolic, 0.0, R3H);
  const double defect = range_defect(dr, 3, Geometry::Hyperbolic, 0.0, R3H);
  CHECK(std::abs(defect) > 1.0);  // far from the range: transversality holds
}

TEST_CASE("large-mode radius limit") {
  // R_theta = sqrt(1 + 2θ/(2−θ)) along a = m − θ
  CHECK(limit_radius(0.0) == 1.0);
  CHECK(limit_radius(1.0) == Catch::Approx(std::sqrt(3.0)).margin(1e-15));
  CHECK_THROWS_AS(limit_radius(-0.1), DomainError);
  CHECK_THROWS_AS(limit_radius(2.0), DomainError);
  // finite-m radii approach the limit at rate 1/m
  const auto gap_at = [](int m) {
    const auto v = eigen_radii(m, Geometry::Euclidean, m - 1.0);
    for (const auto& e : v)
      if (e.branch == RadiusBranch::minus && e.admissible)
        return std::abs(e.R - limit_radius(1.0));
    return -1.0;
  };
  const double g300 = gap_at(300), g3000 = gap_at(3000);
  REQUIRE(g300 >= 0.0);
  REQUIRE(g3000 >= 0.0);
  CHECK(g300 < 5e-3);
  CHECK(g3000 < g300 / 8.0);
}
