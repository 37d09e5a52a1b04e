#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "vfb/errors.hpp"
#include "vfb/geometry.hpp"

namespace vfb {

// Parameters of Kida's closed-form rotating/translating filament family
// (Euclidean geometry): A and V are the family's shape/slip constants, Omega
// the rotation rate and a the slip rate of the candidate solution.
struct KidaParams {
  double A = 0.0;
  double V = 0.0;
  double Omega = 1.0;
  double a = 0.0;
};

// Coefficients (cubic..constant) of Kida's radial polynomial
//   g(u) = u³ + (V²−2A)u² + (A²−4−2AV²+4Va)u + (2a−AV)².
inline std::array<double, 4> kida_cubic_g(double A, double V, double a) {
  return {1.0,
          V * V - 2.0 * A,
          A * A - 4.0 - 2.0 * A * V * V + 4.0 * V * a,
          (2.0 * a - A * V) * (2.0 * a - A * V)};
}

inline double eval_cubic(const std::array<double, 4>& c, double u) {
  return ((c[0] * u + c[1]) * u + c[2]) * u + c[3];
}

// Coefficients (cubic..constant) of the resolvent cubic in β = A − (2/Ω)T₃
// used to classify Kida roots.  Poles: Ω = 0 and A = 4/Ω.
inline std::array<double, 4> beta_cubic(double A, double V, double Omega, double a) {
  if (Omega == 0.0) throw DomainError("beta_cubic undefined at Omega = 0");
  const double pole = A - 4.0 / Omega;
  if (std::abs(pole) < 1e-12) throw DomainError("beta_cubic pole at A = 4/Omega");
  const double inv = 4.0 / pole;
  const double c3 = -0.25 + inv;
  const double c2 = 0.5 * A - inv;
  const double slip = a - 0.5 * A * V * Omega;
  const double c1 = V * slip / Omega -
                    (A * A - 4.0 - 2.0 * A * V * V + 4.0 * V * a) / 4.0 +
                    (2.0 * inv / Omega) * (A - 2.0 / Omega);
  const double c0 = slip * slip / (Omega * Omega) -
                    0.25 * (2.0 * a - A * V) * (2.0 * a - A * V);
  return {c3, c2, c1, c0};
}

// Range of |z₀| over the profile samples; zero exactly for circles/helices,
// strictly positive for the bifurcated branches.
inline double modulus_variation(const std::vector<std::complex<double>>& z0) {
  if (z0.empty()) throw ConfigError("modulus_variation: empty profile");
  double lo = std::abs(z0[0]), hi = lo;
  for (const auto& z : z0) {
    const double m = std::abs(z);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return hi - lo;
}

// Squared-radius proxy r² = A − (2/Ω)T₃ used throughout the compatibility
// identities (Euclidean stereographic modulus γ = |z₀|² gives
// T₃ = (1−γ)/(1+γ)).
inline double kida_r_squared(double T3, const KidaParams& k) {
  return k.A - (2.0 / k.Omega) * T3;
}

// Pointwise defect of Kida's first-integral identity along a tangent curve:
//   |T_h|² = r² θ'² − g(r²)/(4 r²),  θ' = V/2 + (a − AVΩ/2)/(Ω r²),
// maximized over the sample.  Throws near the r² → 0 pole.
inline double kida_compatibility_defect(const std::vector<Vec3>& T, const KidaParams& k) {
  if (T.empty()) throw ConfigError("kida_compatibility_defect: empty sample");
  if (k.Omega == 0.0) throw DomainError("kida defect undefined at Omega = 0");
  const auto g = kida_cubic_g(k.A, k.V, k.a);
  const double slip = k.a - 0.5 * k.A * k.V * k.Omega;
  double worst = 0.0;
  for (const auto& t : T) {
    const double r2 = kida_r_squared(t[2], k);
    if (std::abs(r2) < 1e-8) throw DomainError("kida defect pole: r^2 vanishes on the sample");
    const double th2 = t[0] * t[0] + t[1] * t[1];
    const double thp = 0.5 * k.V + slip / (k.Omega * r2);
    const double model = r2 * thp * thp - eval_cubic(g, r2) / (4.0 * r2);
    worst = std::max(worst, std::abs(th2 - model));
  }
  return worst;
}

// Fit (A, V) so the compatibility identity holds on a constant-T₃ helix with
// tangent modulus² th2 at latitude T3, rotation Omega, slip a.  Starts from
// the steady-state relations A = r₀² + 2c/Ω, V = (a − Ω r₀²)/c with
// r₀ = |T_h|, c = T₃, then polishes the single scalar identity with damped
// gradient steps (the identity is scalar in two unknowns, so we take the
// minimum-norm root).  Degenerate at c = 0 and for a = 0 (the identity then
// pins the trivial circle only).
struct HelixFit {
  KidaParams params;
  double defect = 0.0;
  int iters = 0;
};

inline HelixFit fit_helix_parameters(double T3, double th2, double Omega, double a) {
  if (Omega == 0.0) throw DomainError("helix fit undefined at Omega = 0");
  if (std::abs(T3) < 1e-10) throw DomainError("helix fit degenerate at zero pitch (T3 = 0)");
  const double r02 = th2;  // |T_h|² of the unit tangent
  double A = r02 + 2.0 * T3 / Omega;
  double V = (a - Omega * r02) / T3;
  const std::vector<Vec3> one = {{std::sqrt(th2), 0.0, T3}};
  auto defect_at = [&](double Av, double Vv) {
    return kida_compatibility_defect(one, KidaParams{Av, Vv, Omega, a});
  };
  auto signed_defect = [&](double Av, double Vv) {
    const auto g = kida_cubic_g(Av, Vv, a);
    const double r2 = Av - (2.0 / Omega) * T3;
    const double slip = a - 0.5 * Av * Vv * Omega;
    const double thp = 0.5 * Vv + slip / (Omega * r2);
    return th2 - (r2 * thp * thp - eval_cubic(g, r2) / (4.0 * r2));
  };
  HelixFit out;
  double d = signed_defect(A, V);
  int it = 0;
  for (; it < 100 && std::abs(d) > 1e-13; ++it) {
    const double h = 1e-7;
    const double dA = (signed_defect(A + h, V) - d) / h;
    const double dV = (signed_defect(A, V + h) - d) / h;
    const double g2 = dA * dA + dV * dV;
    if (!(g2 > 1e-30)) break;  // flat identity: a = 0 degeneracy
    A -= d * dA / g2;
    V -= d * dV / g2;
    const double dn = signed_defect(A, V);
    if (!std::isfinite(dn)) throw DivergenceError("helix parameter fit diverged");
    d = dn;
  }
  out.params = KidaParams{A, V, Omega, a};
  out.defect = defect_at(A, V);
  out.iters = it;
  if (!std::isfinite(out.defect)) throw DivergenceError("helix parameter fit diverged");
  return out;
}

// Minimum of the compatibility defect over a (2n+1)² grid of (A, V) centered
// at `center` with the given half-width; cells whose r² range hits the pole
// are skipped.  Used to show branch curves stay bounded away from the whole
// Kida family.
struct GridScanResult {
  double min_defect = 0.0;
  double best_A = 0.0;
  double best_V = 0.0;
  int evaluated = 0;
};

inline GridScanResult defect_grid_min(const std::vector<Vec3>& T, const KidaParams& center,
                                      double half_width = 1.0, int n = 100) {
  GridScanResult out;
  out.min_defect = std::numeric_limits<double>::infinity();
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      KidaParams k = center;
      k.A += half_width * i / n;
      k.V += half_width * j / n;
      // skip parameter cells whose r² range approaches the pole
      double r2min = std::numeric_limits<double>::infinity();
      for (const auto& t : T) r2min = std::min(r2min, kida_r_squared(t[2], k));
      if (r2min < 1e-3) continue;
      const double d = kida_compatibility_defect(T, k);
      ++out.evaluated;
      if (d < out.min_defect) {
        out.min_defect = d;
        out.best_A = k.A;
        out.best_V = k.V;
      }
    }
  }
  if (out.evaluated == 0) throw DomainError("kida grid scan: pole everywhere");
  return out;
}

} // namespace vfb
