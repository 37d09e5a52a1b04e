#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "vfb/errors.hpp"

namespace vfb {

// Selects the sphere (Euclidean) or hyperboloid/disc (Hyperbolic) convention.
// Every "±" in a formula resolves to + for Euclidean and − for Hyperbolic;
// every "∓" resolves to the opposite.
enum class Geometry { Euclidean, Hyperbolic };

// sign_p(g): the value of "±".  sign_m(g): the value of "∓".
inline constexpr double sign_p(Geometry g) { return g == Geometry::Euclidean ? 1.0 : -1.0; }
inline constexpr double sign_m(Geometry g) { return -sign_p(g); }

inline std::string geometry_name(Geometry g) {
  return g == Geometry::Euclidean ? "euclidean" : "hyperbolic";
}

inline Geometry parse_geometry(const std::string& s) {
  if (s == "euclidean" || s == "sphere") return Geometry::Euclidean;
  if (s == "hyperbolic" || s == "disc") return Geometry::Hyperbolic;
  throw ConfigError("unknown geometry '" + s + "' (expected euclidean|hyperbolic)");
}

// Admissible radius set: R > 0, and additionally R < 1 in the Hyperbolic
// geometry (the stereographic image must stay inside the unit disc).
inline void check_radius(Geometry g, double R) {
  if (!(R > 0.0)) throw DomainError("radius must be positive, got R=" + std::to_string(R));
  if (g == Geometry::Hyperbolic && !(R < 1.0))
    throw DomainError("hyperbolic radius must satisfy R < 1, got R=" + std::to_string(R));
}

// Rotation rate of the trivial solution z0 = R w:
//   Omega_R = a + (−1 ± R²)/(1 ± R²).
inline double omega_trivial(Geometry g, double a, double R) {
  check_radius(g, R);
  const double sp = sign_p(g);
  return a + (-1.0 + sp * R * R) / (1.0 + sp * R * R);
}

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }

// Geometry-adapted bilinear form  a ∘± b = a₁b₁ + a₂b₂ ± a₃b₃
// (Euclidean dot product / Minkowski form).
inline double form(const Vec3& a, const Vec3& b, Geometry g) {
  return a[0] * b[0] + a[1] * b[1] + sign_p(g) * a[2] * b[2];
}

// Geometry-adapted wedge a ∧± b: the first two slots are the usual cross
// product; the third slot is ±(a₁b₂ − a₂b₁), i.e. the sign flips for ∧−.
inline Vec3 wedge(const Vec3& a, const Vec3& b, Geometry g) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          sign_p(g) * (a[0] * b[1] - a[1] * b[0])};
}

// Tangent vector from the stereographic value:
//   T = (2 Re z, 2 Im z, 1 ∓ |z|²) / (1 ± |z|²).
// Euclidean: |T| = 1.  Hyperbolic: Minkowski form = −1 with T₃ ≥ 1; requires |z| < 1.
inline Vec3 tangent_from_z(std::complex<double> z, Geometry g) {
  const double m2 = std::norm(z);
  if (g == Geometry::Hyperbolic && !(m2 < 1.0))
    throw DomainError("hyperbolic tangent requires |z| < 1, got |z|^2=" + std::to_string(m2));
  const double sp = sign_p(g), sm = sign_m(g);
  const double den = 1.0 + sp * m2;
  return {2.0 * z.real() / den, 2.0 * z.imag() / den, (1.0 + sm * m2) / den};
}

// Inverse stereographic projection z = (T₁ + i T₂)/(1 + T₃).
inline std::complex<double> stereo_project(const Vec3& T, Geometry g) {
  if (g == Geometry::Euclidean && T[2] <= -1.0 + 1e-14)
    throw DomainError("stereographic projection singular at the south pole");
  if (g == Geometry::Hyperbolic && !(T[2] > 0.0))
    throw DomainError("hyperbolic projection requires T3 > 0");
  return {T[0] / (1.0 + T[2]), T[1] / (1.0 + T[2])};
}

// Rotation about the vertical axis: e^{i angle} on the horizontal pair, third
// component fixed. Preserves both the Euclidean norm and the Minkowski form.
inline Vec3 rotate_frame(const Vec3& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]};
}

} // namespace vfb
