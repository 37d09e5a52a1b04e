#pragma once

#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "vfb/errors.hpp"
#include "vfb/fourier.hpp"
#include "vfb/geometry.hpp"

namespace vfb {

// Full configuration of the steady-state functional G_a.
// Ω is never stored independently: Ω = omega_trivial(geometry, a, R) + lambda.
struct ProblemParams {
  Geometry geometry = Geometry::Euclidean;
  double a = 0.0;       // slipping speed
  double R = 1.0;       // trivial radius
  double lambda = 0.0;  // frequency offset, Ω = Ω_R + λ
  int m = 1;            // fold
  int M = 64;           // truncation

  void validate() const {
    check_radius(geometry, R);
    if (m < 1) throw ConfigError("fold m must be >= 1");
    if (M < 1) throw ConfigError("truncation M must be >= 1");
  }
  double omega() const { return omega_trivial(geometry, a, R) + lambda; }
};

// De-aliasing grid: 4M oversampling, rounded up so that J is a multiple of m.
// (J ≡ 0 mod m keeps residual aliasing inside the m-fold mode classes, so the
// m-fold support of the output is exact rather than approximate.)
inline int dealiased_grid_size(int M, int m) {
  int J = 4 * M;
  if (m > 1 && J % m != 0) J += m - J % m;
  return J;
}

namespace detail {

// Evaluate Σ f_n (i n)^k-style derived series on the grid in one pass.
struct GridBundle {
  std::vector<std::complex<double>> F, WF1, WF2;  // f, w f', w² f''
};

inline GridBundle sample_profile(const FourierProfile& f, int J) {
  GridBundle b;
  b.F.assign(J, {0, 0});
  b.WF1.assign(J, {0, 0});
  b.WF2.assign(J, {0, 0});
  for (int j = 0; j < J; ++j) {
    const double th = grid_theta(j, J);
    std::complex<double> sF = 0, s1 = 0, s2 = 0;
    for (int n = -f.M; n <= f.M; ++n) {
      const double fn = f.c[n + f.M];
      if (fn == 0.0) continue;
      const std::complex<double> e = std::polar(fn, n * th);
      sF += e;
      s1 += static_cast<double>(n) * e;
      s2 += static_cast<double>(n) * (n - 1) * e;
    }
    b.F[j] = sF;
    b.WF1[j] = s1;
    b.WF2[j] = s2;
  }
  return b;
}

} // namespace detail

// G_a(R,λ,f)(w) = ΩR + Ωf + (1−a)R + (1−a)f + (3−a)wf' + w²f''
//                 ∓ 2 (R + conj f)(R + f + wf')² / (1 ± |R+f|²),
// evaluated pointwise on the de-aliased grid and analyzed back to modes −M..M.
// The output lives in the range space (mode 0 allowed) and is m-fold with real
// coefficients whenever the input is.
// grid_multiplier > 1 re-evaluates on a finer grid (used for independent
// residual re-checks at higher resolution).
inline FourierProfile eval_G(const ProblemParams& p, const FourierProfile& f,
                             int grid_multiplier = 1) {
  p.validate();
  if (std::abs(f.at(0)) > 0.0)
    throw ConfigError("perturbation profile must have f_0 = 0");
  const int J = grid_multiplier * dealiased_grid_size(p.M, p.m);
  const auto b = detail::sample_profile(f, J);
  const double sp = sign_p(p.geometry), sm = sign_m(p.geometry);
  const double Om = p.omega();
  GridValues out;
  out.v.assign(J, {0, 0});
  for (int j = 0; j < J; ++j) {
    const std::complex<double> F = b.F[j];
    const std::complex<double> RF = p.R + F;
    const double den = 1.0 + sp * std::norm(RF);
    if (std::abs(den) < 1e-8)
      throw DomainError("denominator 1 ± |R+f|² within 1e-8 of zero at grid node " +
                        std::to_string(j) + " (profile touching the disc boundary)");
    const std::complex<double> lin =
        Om * p.R + Om * F + (1.0 - p.a) * p.R + (1.0 - p.a) * F + (3.0 - p.a) * b.WF1[j] +
        b.WF2[j];
    const std::complex<double> nl = std::conj(RF) * (RF + b.WF1[j]) * (RF + b.WF1[j]) / den;
    out.v[j] = lin + sm * 2.0 * nl;
  }
  // The coefficients of G are real whenever f has real coefficients (the
  // functional preserves the symmetry class), so the imaginary parts here are
  // roundoff left over from O(1) cancellations. Their size relative to G is
  // unbounded near a zero of G — exactly where Newton iterates live — so the
  // symmetry check must be disabled for this internal assembly.
  return analyze(out, p.M, p.m, std::numeric_limits<double>::infinity());
}

// Linearization of G_a at the trivial solution (λ = 0), in closed coefficient
// form:  L h = ∓4R²/(1±R²)²·Re[h] + ((3∓R²)/(1±R²) − a)·w h' + w² h'',
// where Re[h] is the series (h + conj_reflect h)/2.
inline FourierProfile apply_linearized(const ProblemParams& p, const FourierProfile& h) {
  p.validate();
  const double sp = sign_p(p.geometry), sm = sign_m(p.geometry);
  const double R2 = p.R * p.R;
  const double den = 1.0 + sp * R2;
  const double re_coef = sm * 4.0 * R2 / (den * den);
  const double d1_coef = (3.0 + sm * R2) / den - p.a;
  FourierProfile out(h.M, h.mfold);
  for (int n = -h.M; n <= h.M; ++n) {
    const double hn = h.c[n + h.M];
    const double hmn = h.c[-n + h.M];
    out.c[n + h.M] = re_coef * 0.5 * (hn + hmn) + d1_coef * n * hn +
                     static_cast<double>(n) * (n - 1) * hn;
  }
  return out;
}

} // namespace vfb
