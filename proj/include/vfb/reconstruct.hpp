#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "vfb/errors.hpp"
#include "vfb/fourier.hpp"
#include "vfb/geometry.hpp"
#include "vfb/operator_g.hpp"

namespace vfb {

// Discretized curve data at a fixed time: arclength grid, stereographic
// profile, tangent field, filament positions.
struct CurveSample {
  double t = 0.0;
  std::vector<double> s;
  std::vector<std::complex<double>> z0;  // rotated/slipped profile at time t
  std::vector<Vec3> T0;                  // tangent field at time t
  std::vector<Vec3> X;                   // filament at time t
};

namespace detail {

// Profile value and s-derivative of z₀(s) = e^{is}(R + f(e^{is})):
// z₀ = Σ_n c_n e^{ins} with c_{1+k} = f_k and c_1 += R.
struct ProfileEval {
  std::complex<double> z, zs;
};

inline ProfileEval eval_profile(const ProblemParams& p, const FourierProfile& f, double s) {
  std::complex<double> z = 0, zs = 0;
  for (int k = -f.M; k <= f.M; ++k) {
    double coef = f.at(k);
    if (k == 0) coef += p.R;  // mode 1+0 carries R
    if (coef == 0.0) continue;
    const int n = 1 + k;
    const std::complex<double> e = std::polar(coef, n * s);
    z += e;
    zs += std::complex<double>(0.0, static_cast<double>(n)) * e;
  }
  return {z, zs};
}

// Tangent and its s-derivative from z(s), z'(s) by differentiating
// T = (2z, 1∓|z|²)/(1±|z|²).
inline void tangent_and_deriv(std::complex<double> z, std::complex<double> zs, Geometry g,
                              Vec3& T, Vec3& Ts) {
  const double sp = sign_p(g), sm = sign_m(g);
  const double m2 = std::norm(z);
  if (g == Geometry::Hyperbolic && !(m2 < 1.0))
    throw DomainError("profile leaves the unit disc during reconstruction");
  const double D = 1.0 + sp * m2;
  const double Dp = 2.0 * sp * (std::conj(z) * zs).real();
  const std::complex<double> Th = 2.0 * z / D;
  const std::complex<double> Thp = 2.0 * zs / D - 2.0 * z * Dp / (D * D);
  const double T3 = (1.0 + sm * m2) / D;
  const double T3p = 2.0 * sm * (std::conj(z) * zs).real() / D - (1.0 + sm * m2) * Dp / (D * D);
  T = {Th.real(), Th.imag(), T3};
  Ts = {Thp.real(), Thp.imag(), T3p};
}

// Drift integrand W(τ) = T⁰(−aτ) ∧± T⁰_s(−aτ).
inline Vec3 drift_integrand(const ProblemParams& p, const FourierProfile& f, double tau) {
  const auto pe = eval_profile(p, f, -p.a * tau);
  Vec3 T, Ts;
  tangent_and_deriv(pe.z, pe.zs, p.geometry, T, Ts);
  return wedge(T, Ts, p.geometry);
}

// Nodes/weights for 8-point Gauss–Legendre on [-1, 1].
inline const std::array<double, 8>& gauss8_x() {
  static const std::array<double, 8> x = {
      -0.96028985649753623, -0.79666647741362674, -0.52553240991632899,
      -0.18343464249564980, 0.18343464249564980,  0.52553240991632899,
      0.79666647741362674,  0.96028985649753623};
  return x;
}
inline const std::array<double, 8>& gauss8_w() {
  static const std::array<double, 8> w = {
      0.10122853629037626, 0.22238103445337447, 0.31370664587788729,
      0.36268378337836198, 0.36268378337836198, 0.31370664587788729,
      0.22238103445337447, 0.10122853629037626};
  return w;
}

} // namespace detail

// Drift term Q(t) = ∫₀^t ℛ^{Ωτ} W(τ) dτ by composite Gauss quadrature with
// panel doubling until the result changes by less than 1e−10 relative.
inline Vec3 drift_quadrature(const ProblemParams& p, const FourierProfile& f, double t) {
  if (t == 0.0) return {0, 0, 0};
  const double Om = p.omega();
  Vec3 prev{0, 0, 0};
  for (int panels = 1; panels <= (1 << 20); panels *= 2) {
    Vec3 acc{0, 0, 0};
    const double h = t / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
      const double mid = (pnl + 0.5) * h;
      for (int g = 0; g < 8; ++g) {
        const double tau = mid + 0.5 * h * detail::gauss8_x()[g];
        const Vec3 W = detail::drift_integrand(p, f, tau);
        acc = acc + (0.5 * h * detail::gauss8_w()[g]) * rotate_frame(W, Om * tau);
      }
    }
    if (panels > 1) {
      const Vec3 diff = acc - prev;
      const double scale = std::max(1.0, std::hypot(acc[0], acc[1], acc[2]));
      if (std::hypot(diff[0], diff[1], diff[2]) < 1e-10 * scale) return acc;
    }
    prev = acc;
  }
  throw DivergenceError("drift quadrature failed to converge");
}

// a = 0 closed form: W = T⁰(0) ∧± T⁰_s(0) is constant, so
//   Q(t) = ( (e^{iΩt}−1)/(iΩ) · W_h ,  W₃ · t ).
// Singular at Ω = 0; callers fall back to the quadrature path there.
inline Vec3 drift_closed_form(const ProblemParams& p, const FourierProfile& f, double t) {
  if (p.a != 0.0) throw ConfigError("closed-form drift requires a = 0");
  const double Om = p.omega();
  if (std::abs(Om) < 1e-12) throw DomainError("closed-form drift singular at Omega = 0");
  const Vec3 W = detail::drift_integrand(p, f, 0.0);
  const std::complex<double> Wh(W[0], W[1]);
  const std::complex<double> phase =
      (std::polar(1.0, Om * t) - 1.0) / std::complex<double>(0.0, Om);
  const std::complex<double> Qh = phase * Wh;
  return {Qh.real(), Qh.imag(), W[2] * t};
}

// Filament and tangent field at time t over s ∈ [0, 2π·periods):
//   X(t,s) = ℛ^{Ωt} ∫₀^s T⁰(σ−at) dσ + Q(t),   fixing X(0,0) = 0.
// The s-antiderivative splits the mean (linear-in-s) term from the oscillatory
// modes, which are integrated exactly in spectral space.
inline CurveSample curve_from_tangent(const ProblemParams& p, const FourierProfile& f,
                                      double t, int J, int periods = 1) {
  p.validate();
  if (J < 2 * (p.M + 1) + 1) throw ConfigError("curve grid too small for the profile");
  if (periods < 1) throw ConfigError("periods must be >= 1");
  const double Om = p.omega();
  const int JJ = J * periods;
  const double L = 2.0 * std::numbers::pi * periods;

  CurveSample out;
  out.t = t;
  out.s.resize(JJ);
  out.z0.resize(JJ);
  out.T0.resize(JJ);
  out.X.resize(JJ);

  // Tangent U(σ) = T⁰(σ − a t) sampled over one 2π period (U is 2π-periodic).
  std::vector<Vec3> U(J);
  for (int j = 0; j < J; ++j) {
    const double sj = grid_theta(j, J);
    const auto pe = detail::eval_profile(p, f, sj - p.a * t);
    Vec3 T, Ts;
    detail::tangent_and_deriv(pe.z, pe.zs, p.geometry, T, Ts);
    U[j] = T;
  }
  // Full-grid DFT of each component; antiderivative A(s) = Û₀·s +
  // Σ_{k≠0} Û_k (e^{iks}−1)/(ik), spectrally exact for the sampled band.
  const int kmax = (J - 1) / 2;
  std::array<std::vector<std::complex<double>>, 3> Uhat;
  for (auto& c : Uhat) c.assign(2 * kmax + 1, {0, 0});
  for (int k = -kmax; k <= kmax; ++k) {
    std::complex<double> acc0 = 0, acc1 = 0, acc2 = 0;
    for (int j = 0; j < J; ++j) {
      const std::complex<double> e = std::polar(1.0, -k * grid_theta(j, J));
      acc0 += U[j][0] * e;
      acc1 += U[j][1] * e;
      acc2 += U[j][2] * e;
    }
    Uhat[0][k + kmax] = acc0 / static_cast<double>(J);
    Uhat[1][k + kmax] = acc1 / static_cast<double>(J);
    Uhat[2][k + kmax] = acc2 / static_cast<double>(J);
  }
  const Vec3 Q = (p.a == 0.0 && std::abs(Om) >= 1e-12) ? drift_closed_form(p, f, t)
                                                       : drift_quadrature(p, f, t);
  for (int jj = 0; jj < JJ; ++jj) {
    const double sj = L * jj / JJ;
    out.s[jj] = sj;
    // z and T at time t: rotate the shifted profile by e^{iΩt}.
    const auto pe = detail::eval_profile(p, f, sj - p.a * t);
    const std::complex<double> zt = std::polar(1.0, Om * t) * pe.z;
    out.z0[jj] = zt;
    out.T0[jj] = tangent_from_z(zt, p.geometry);
    Vec3 A{0, 0, 0};
    for (int comp = 0; comp < 3; ++comp) {
      std::complex<double> acc = Uhat[comp][kmax] * sj;  // mean term → linear in s
      for (int k = -kmax; k <= kmax; ++k) {
        if (k == 0) continue;
        const std::complex<double> ik(0.0, static_cast<double>(k));
        acc += Uhat[comp][k + kmax] * (std::polar(1.0, k * sj) - 1.0) / ik;
      }
      A[comp] = acc.real();
    }
    out.X[jj] = rotate_frame(A, Om * t) + Q;
  }
  return out;
}

// Max-norm residual of the binormal flow X_t = X_s ∧± X_ss from three time
// slices: centered difference in t, spectral derivative of the (periodic)
// tangent field in s.  X_s = T holds by construction; X_ss = ∂_s T.
inline double binormal_residual(const CurveSample& minus, const CurveSample& center,
                                const CurveSample& plus, double delta, Geometry g) {
  const int J = static_cast<int>(center.s.size());
  if (static_cast<int>(minus.s.size()) != J || static_cast<int>(plus.s.size()) != J)
    throw ConfigError("binormal_residual: slice grids differ");
  // spectral derivative of T over the full rendered range (periodic)
  const int kmax = (J - 1) / 2;
  const double L = center.s.back() + (center.s[1] - center.s[0]);
  double worst = 0.0;
  std::array<std::vector<std::complex<double>>, 3> That;
  for (auto& c : That) c.assign(2 * kmax + 1, {0, 0});
  for (int k = -kmax; k <= kmax; ++k) {
    std::complex<double> a0 = 0, a1 = 0, a2 = 0;
    for (int j = 0; j < J; ++j) {
      const std::complex<double> e = std::polar(1.0, -2.0 * std::numbers::pi * k * j / J);
      a0 += center.T0[j][0] * e;
      a1 += center.T0[j][1] * e;
      a2 += center.T0[j][2] * e;
    }
    That[0][k + kmax] = a0 / static_cast<double>(J);
    That[1][k + kmax] = a1 / static_cast<double>(J);
    That[2][k + kmax] = a2 / static_cast<double>(J);
  }
  const double freq = 2.0 * std::numbers::pi / L;
  for (int j = 0; j < J; ++j) {
    Vec3 Ts{0, 0, 0};
    for (int comp = 0; comp < 3; ++comp) {
      std::complex<double> acc = 0;
      for (int k = -kmax; k <= kmax; ++k) {
        if (k == 0) continue;
        const std::complex<double> ik(0.0, freq * k);
        acc += That[comp][k + kmax] * ik *
               std::polar(1.0, 2.0 * std::numbers::pi * k * j / J);
      }
      Ts[comp] = acc.real();
    }
    const Vec3 Xt = (1.0 / (2.0 * delta)) * (plus.X[j] - minus.X[j]);
    const Vec3 rhs = wedge(center.T0[j], Ts, g);
    const Vec3 res = Xt - rhs;
    worst = std::max(worst, std::max({std::abs(res[0]), std::abs(res[1]), std::abs(res[2])}));
  }
  return worst;
}

// Default centered-difference half-width for the binormal residual:
// 1e−3 · (characteristic time 1/max(|Ω|, |a|, 1)).
inline double default_binormal_delta(const ProblemParams& p) {
  return 1e-3 / std::max({std::abs(p.omega()), std::abs(p.a), 1.0});
}

} // namespace vfb
