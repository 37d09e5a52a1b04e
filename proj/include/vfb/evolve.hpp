#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vfb/errors.hpp"
#include "vfb/fourier.hpp"
#include "vfb/geometry.hpp"
#include "vfb/operator_g.hpp"

namespace vfb {

// Outcome of a steadiness certification run: worst relative deviation of the
// evolved spectrum from the rotating/slipping reference across checkpoints.
struct SteadinessReport {
  double max_rel_error = 0.0;
  std::vector<double> checkpoint_times;
  std::vector<double> checkpoint_errors;
  double dt_used = 0.0;
  int halvings = 0;
};

namespace detail {

// Dense DFT workspace between coefficient vectors c_n (n = −M..M) and J grid
// values.  Direct summation keeps results bit-reproducible across runs.
struct EvolveWorkspace {
  int M, J;
  double sp;
  Eigen::MatrixXcd synth;   // J × (2M+1):  e^{i n θ_j}
  Eigen::MatrixXcd analy;   // (2M+1) × J:  e^{−i n θ_j} / J
  Eigen::VectorXcd d1, d2;  // diagonal i·n and (i·n)² multipliers

  EvolveWorkspace(int M_, int J_, Geometry g) : M(M_), J(J_), sp(sign_p(g)) {
    if (J < 2 * M + 1) throw ConfigError("evolution grid too small for mode cutoff");
    synth.resize(J, 2 * M + 1);
    analy.resize(2 * M + 1, J);
    d1.resize(2 * M + 1);
    d2.resize(2 * M + 1);
    for (int n = -M; n <= M; ++n) {
      const std::complex<double> in(0.0, static_cast<double>(n));
      d1(n + M) = in;
      d2(n + M) = in * in;
      for (int j = 0; j < J; ++j) {
        const double th = 2.0 * std::numbers::pi * j / J;
        synth(j, n + M) = std::polar(1.0, n * th);
        analy(n + M, j) = std::polar(1.0 / J, -n * th);
      }
    }
  }

  // Right-hand side of ż = i[z_ss ∓ 2 z̄ (z_s)² / (1 ± |z|²)] in
  // coefficient space.  Throws DomainError if the profile reaches the
  // denominator guard (hyperbolic boundary).
  Eigen::VectorXcd rhs(const Eigen::VectorXcd& c) const {
    const Eigen::VectorXcd zg = synth * c;
    const Eigen::VectorXcd zsg = synth * d1.cwiseProduct(c).eval();
    const Eigen::VectorXcd zssg = synth * d2.cwiseProduct(c).eval();
    Eigen::VectorXcd out(J);
    const std::complex<double> iu(0.0, 1.0);
    const double sm = -sp;
    for (int j = 0; j < J; ++j) {
      const double den = 1.0 + sp * std::norm(zg(j));
      if (!(den > 1e-8))  // also catches NaN and hyperbolic |z| >= 1
        throw DomainError("evolution profile hit the geometry boundary");
      out(j) = iu * (zssg(j) + sm * 2.0 * std::conj(zg(j)) * zsg(j) * zsg(j) / den);
    }
    return analy * out;
  }
};

inline Eigen::VectorXcd coeffs_from_profile(const ProblemParams& p, const FourierProfile& f) {
  // z₀ modes are 1+k for profile modes k; the vector is indexed n = −M..M
  // with M = p.M + 1 so the shift fits.
  const int M = p.M + 1;
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(2 * M + 1);
  c(1 + M) += p.R;
  for (int k = -p.M; k <= p.M; ++k) c(1 + k + M) += f.at(k);
  return c;
}

} // namespace detail

// Evolve the profile under the stereographic binormal-flow equation with
// classical RK4 in coefficient space and compare, at checkpoints, with the
// exact rotating/slipping reference c_n(t) = c_n(0) e^{i(Ω−na)t}.
//
// Ω is taken from the params (trivial dispersion plus λ).  A resolution guard
// requires the top modes of z to sit below 1e−8 relative; blow-up triggers up
// to two step-halvings before reporting divergence.
inline SteadinessReport steadiness_error(const ProblemParams& p, const FourierProfile& f,
                                         double t_final, double dt, int grid_multiplier = 2) {
  p.validate();
  if (!(t_final > 0.0) || !(dt > 0.0)) throw ConfigError("t_final and dt must be positive");
  const int M = p.M + 1;  // z-modes
  const int J = std::max(2 * M + 1, grid_multiplier * (2 * M + 1));
  const detail::EvolveWorkspace ws(M, J, p.geometry);
  const Eigen::VectorXcd c0 = detail::coeffs_from_profile(p, f);
  const double cmax = c0.cwiseAbs().maxCoeff();
  if (cmax == 0.0) throw ConfigError("zero initial profile");
  // resolution guard at the cutoff
  const double top = std::max(std::abs(c0(0)), std::abs(c0(2 * M)));
  if (top > 1e-8 * cmax)
    throw DomainError("profile not resolved at mode cutoff (top coefficients above 1e-8 relative)");
  const double Om = p.omega();
  const double norm0 = c0.norm();

  for (int halvings = 0; halvings <= 2; ++halvings) {
    const double h = dt / (1 << halvings);
    const long nsteps = std::lround(t_final / h);
    if (nsteps < 1) throw ConfigError("dt larger than t_final");
    const long stride = std::max<long>(1, nsteps / 10);  // ~10 checkpoints
    SteadinessReport rep;
    rep.dt_used = h;
    rep.halvings = halvings;
    Eigen::VectorXcd c = c0;
    bool failed = false;
    try {
      for (long step = 1; step <= nsteps; ++step) {
        const Eigen::VectorXcd k1 = ws.rhs(c);
        const Eigen::VectorXcd k2 = ws.rhs(c + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = ws.rhs(c + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = ws.rhs(c + h * k3);
        c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!c.allFinite()) throw DomainError("evolution blew up");
        if (step % stride == 0 || step == nsteps) {
          const double t = step * h;
          Eigen::VectorXcd ref(2 * M + 1);
          for (int n = -M; n <= M; ++n)
            ref(n + M) = c0(n + M) * std::polar(1.0, (Om - n * p.a) * t);
          rep.checkpoint_times.push_back(t);
          rep.checkpoint_errors.push_back((c - ref).norm() / norm0);
        }
      }
    } catch (const DomainError& e) {
      if (halvings == 2)
        throw DivergenceError(std::string("evolution failed after step-halving: ") + e.what());
      failed = true;
    }
    if (failed) continue;
    rep.max_rel_error = 0.0;
    for (double e : rep.checkpoint_errors) rep.max_rel_error = std::max(rep.max_rel_error, e);
    return rep;
  }
  throw DivergenceError("evolution failed");
}

} // namespace vfb
