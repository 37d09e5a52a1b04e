#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vfb/errors.hpp"
#include "vfb/fourier.hpp"
#include "vfb/operator_g.hpp"
#include "vfb/spectral.hpp"

namespace vfb {

// One converged solution on a bifurcated branch.
struct BranchPoint {
  double eta = 0.0;         // signed amplitude parameter
  ProblemParams params;     // carries the point's (R, lambda)
  FourierProfile f;         // m-fold perturbation, f_0 = 0
  double residual_inf = 0.0;
  int newton_iters = 0;     // iterations needed to reach the tolerance
  double kernel_angle = 0.0;  // alignment angle between f and the kernel direction
  bool cond_warning = false;  // Jacobian conditioning exceeded 1e12
  double jacobian_cond = 0.0;
};

struct Branch {
  EigenRadius eigenpair;
  double beta = 0.0;
  int direction = +1;  // sign of eta along the branch
  std::vector<BranchPoint> points;  // eta strictly monotone
  bool complete = true;
  std::string error;  // set when the trace stopped early; points holds the prefix
};

namespace detail {

// The truncated unknowns are x = (λ, R, f_{k m} for k = −K..K, k ≠ 0) with
// K = ⌊M/m⌋; the residual stacks the G coefficients on modes 0, ±m, ..., ±Km
// plus the bordered amplitude constraint ⟨f, h*⟩ − η‖h*‖².
struct BorderedSystem {
  Geometry geometry;
  double a;
  int m, M, K;
  std::vector<int> modes;  // −Km..−m, m..Km in increasing order
  double beta;             // kernel coefficient: h* = β w^m + w̄^m
  double h_norm_sq;        // ‖h*‖² = β² + 1

  BorderedSystem(const EigenRadius& eig, int M_) {
    geometry = eig.geometry;
    a = eig.a;
    m = eig.n;
    M = M_;
    K = M / m;
    if (K < 1) throw ConfigError("truncation M too small for fold m");
    for (int k = -K; k <= K; ++k)
      if (k != 0) modes.push_back(k * m);
    const auto kv = kernel_vector(eig.n, eig.geometry, eig.a, eig.R);
    beta = kv.beta;
    h_norm_sq = beta * beta + 1.0;
  }

  int size() const { return 2 + static_cast<int>(modes.size()); }

  FourierProfile unpack_f(const Eigen::VectorXd& x) const {
    FourierProfile f(M, m);
    for (size_t i = 0; i < modes.size(); ++i) f.set(modes[i], x(2 + i));
    return f;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& x, double eta) const {
    ProblemParams p{geometry, a, x(1), x(0), m, M};
    const FourierProfile G = eval_G(p, unpack_f(x));
    Eigen::VectorXd r(size());
    r(0) = G.at(0);
    for (size_t i = 0; i < modes.size(); ++i) r(1 + i) = G.at(modes[i]);
    // modes = [−Km..−m, m..Km]: mode −m sits at index K−1, mode +m at index K.
    r(size() - 1) = beta * x(2 + K) + x(2 + (K - 1)) - eta * h_norm_sq;
    return r;
  }
};

inline double inf_norm(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

} // namespace detail

// Initial guess along the kernel direction: f = η·h*, R = R*, λ = 0.
inline std::pair<ProblemParams, FourierProfile> initial_guess(const EigenRadius& eig,
                                                              int M, double eta) {
  if (!eig.admissible) throw ConfigError("initial_guess requires an admissible eigenpair");
  const auto kv = kernel_vector(eig.n, eig.geometry, eig.a, eig.R);
  FourierProfile f(M, eig.n);
  f.set(eig.n, eta * kv.beta);
  f.set(-eig.n, eta * 1.0);
  ProblemParams p{eig.geometry, eig.a, eig.R, 0.0, eig.n, M};
  return {p, f};
}

namespace detail {

inline Eigen::VectorXd pack(const ProblemParams& p, const FourierProfile& f,
                            const BorderedSystem& sys) {
  Eigen::VectorXd x(sys.size());
  x(0) = p.lambda;
  x(1) = p.R;
  for (size_t i = 0; i < sys.modes.size(); ++i) x(2 + i) = f.at(sys.modes[i]);
  return x;
}

struct SolveResult {
  Eigen::VectorXd x;
  double residual_inf;
  int iters_to_tol;
  double cond;
};

// Newton iteration with a central-difference Jacobian (step 6e−6·(1+|x_i|))
// and stagnation-driven termination: keep the best iterate seen; stop once
// improvement stalls twice with the best at/below tolerance, or the residual
// reaches the roundoff floor. Returns the best iterate. The reported
// iteration count is the number of updates needed to first reach `tol`.
inline SolveResult newton_solve(const BorderedSystem& sys, Eigen::VectorXd x, double eta,
                                double tol, int max_iters) {
  Eigen::VectorXd best = x;
  double best_r = std::numeric_limits<double>::infinity();
  int no_improve = 0;
  int iters_to_tol = -1;
  double cond = 0.0;
  const int n = sys.size();
  for (int it = 1; it <= max_iters; ++it) {
    Eigen::VectorXd r;
    try {
      r = sys.residual(x, eta);
    } catch (const DomainError&) {
      break;  // iterate left the domain; fall back to the best seen
    }
    const double rn = inf_norm(r);
    if (rn < 0.9 * best_r) {
      best = x;
      best_r = rn;
      no_improve = 0;
    } else {
      ++no_improve;
      if (rn < best_r) {
        best = x;
        best_r = rn;
      }
    }
    if (iters_to_tol < 0 && rn <= tol) iters_to_tol = it - 1;
    if (best_r < 2e-16 || (no_improve >= 2 && best_r <= tol)) break;
    Eigen::MatrixXd J(n, n);
    for (int i = 0; i < n; ++i) {
      const double h = 6e-6 * (1.0 + std::abs(x(i)));
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      try {
        J.col(i) = (sys.residual(xp, eta) - sys.residual(xm, eta)) / (2.0 * h);
      } catch (const DomainError&) {
        throw DivergenceError("Jacobian probe left the admissible domain");
      }
    }
    {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
      const auto& sv = svd.singularValues();
      cond = sv(0) / std::max(sv(sv.size() - 1), 1e-300);
    }
    x = x - J.partialPivLu().solve(r);
  }
  if (!(best_r <= tol))
    throw DivergenceError("Newton failed to converge: last residual " +
                          std::to_string(best_r) + " at eta=" + std::to_string(eta));
  if (iters_to_tol < 0) iters_to_tol = max_iters;
  return {best, best_r, iters_to_tol, cond};
}

inline BranchPoint make_point(const BorderedSystem& sys, const SolveResult& s, double eta) {
  BranchPoint bp;
  bp.eta = eta;
  bp.params = ProblemParams{sys.geometry, sys.a, s.x(1), s.x(0), sys.m, sys.M};
  bp.f = sys.unpack_f(s.x);
  bp.residual_inf = s.residual_inf;
  bp.newton_iters = s.iters_to_tol;
  bp.jacobian_cond = s.cond;
  bp.cond_warning = s.cond > 1e12;
  const double fn = bp.f.two_norm();
  const double hn = std::sqrt(sys.h_norm_sq);
  const double inner = sys.beta * bp.f.at(sys.m) + bp.f.at(-sys.m);
  if (fn > 0.0)
    bp.kernel_angle = std::acos(std::min(1.0, std::abs(inner) / (fn * hn)));
  return bp;
}

} // namespace detail

// Solve the bordered system at fixed amplitude η from a supplied guess.
inline BranchPoint newton_correct(const ProblemParams& guess_params,
                                  const FourierProfile& guess_f,
                                  const EigenRadius& eigenpair, double eta,
                                  double tol = 1e-11, int max_iters = 25) {
  if (eta == 0.0)
    throw ConfigError("newton_correct: eta must be nonzero (the trivial line is excluded)");
  detail::BorderedSystem sys(eigenpair, guess_params.M);
  auto x0 = detail::pack(guess_params, guess_f, sys);
  auto s = detail::newton_solve(sys, x0, eta, tol, max_iters);
  return detail::make_point(sys, s, eta);
}

// March η over `steps` uniform increments to eta_max (sign of eta_max sets the
// direction), warm-starting each solve from the previous point plus linear
// extrapolation. A solve that exceeds 8 iterations or fails triggers one
// midpoint (halved-step) retry before the failure is recorded; on failure the
// branch holds the converged prefix.
inline Branch trace_branch(const EigenRadius& eigenpair, int M, double eta_max,
                           int steps, double tol = 1e-11) {
  if (steps < 1) throw ConfigError("trace_branch: steps must be >= 1");
  if (eta_max == 0.0) throw ConfigError("trace_branch: eta_max must be nonzero");
  detail::BorderedSystem sys(eigenpair, M);
  Branch br;
  br.eigenpair = eigenpair;
  br.beta = sys.beta;
  br.direction = eta_max > 0 ? +1 : -1;

  Eigen::VectorXd prev, prevprev;
  bool have_prev = false, have_prevprev = false;
  for (int k = 1; k <= steps; ++k) {
    const double eta = eta_max * k / steps;
    Eigen::VectorXd x0;
    if (!have_prev) {
      auto [p0, f0] = initial_guess(eigenpair, M, eta);
      x0 = detail::pack(p0, f0, sys);
    } else if (!have_prevprev) {
      x0 = prev;
    } else {
      x0 = 2.0 * prev - prevprev;
    }
    detail::SolveResult s;
    try {
      s = detail::newton_solve(sys, x0, eta, tol, 25);
      if (s.iters_to_tol > 8) {
        // slow contraction: halve the step once, then retarget
        const double eta_mid = eta - 0.5 * eta_max / steps;
        auto smid = detail::newton_solve(sys, have_prev ? prev : x0, eta_mid, tol, 25);
        s = detail::newton_solve(sys, smid.x, eta, tol, 25);
      }
    } catch (const DivergenceError& e) {
      try {
        const double eta_mid = eta - 0.5 * eta_max / steps;
        auto smid = detail::newton_solve(sys, have_prev ? prev : x0, eta_mid, tol, 25);
        s = detail::newton_solve(sys, smid.x, eta, tol, 25);
      } catch (const DivergenceError& e2) {
        br.complete = false;
        br.error = e2.what();
        return br;
      }
    }
    br.points.push_back(detail::make_point(sys, s, eta));
    prevprev = prev;
    have_prevprev = have_prev;
    prev = s.x;
    have_prev = true;
  }
  return br;
}

// Independent residual re-check of a branch point on a grid `times` finer than
// the solver's own.
inline double recheck_residual(const BranchPoint& bp, int times = 2) {
  return eval_G(bp.params, bp.f, times).inf_norm();
}

} // namespace vfb
