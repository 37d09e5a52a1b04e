#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "vfb/errors.hpp"

namespace vfb {

// Truncated real-coefficient Laurent series f(w) = Σ_{|n|≤M} f_n wⁿ on |w|=1.
// Real coefficients encode the symmetry f(w̄) = conj(f(w)). Profiles restricted
// to the m-fold subspace carry only modes divisible by m.
struct FourierProfile {
  int M = 0;      // truncation: modes −M..M
  int mfold = 1;  // 1 = unrestricted
  std::vector<double> c;  // dense storage, c[n + M]

  FourierProfile() = default;
  FourierProfile(int truncation, int m = 1)
      : M(truncation), mfold(m), c(2 * truncation + 1, 0.0) {}

  double at(int n) const { return (n < -M || n > M) ? 0.0 : c[n + M]; }
  void set(int n, double v) {
    if (n < -M || n > M) throw ConfigError("mode " + std::to_string(n) + " outside truncation");
    c[n + M] = v;
  }

  double inf_norm() const {
    double r = 0.0;
    for (double x : c) r = std::max(r, std::abs(x));
    return r;
  }
  double two_norm() const {
    double r = 0.0;
    for (double x : c) r += x * x;
    return std::sqrt(r);
  }
};

inline FourierProfile operator+(const FourierProfile& a, const FourierProfile& b) {
  FourierProfile out(std::max(a.M, b.M), a.mfold == b.mfold ? a.mfold : 1);
  for (int n = -out.M; n <= out.M; ++n) out.c[n + out.M] = a.at(n) + b.at(n);
  return out;
}
inline FourierProfile operator-(const FourierProfile& a, const FourierProfile& b) {
  FourierProfile out(std::max(a.M, b.M), a.mfold == b.mfold ? a.mfold : 1);
  for (int n = -out.M; n <= out.M; ++n) out.c[n + out.M] = a.at(n) - b.at(n);
  return out;
}
inline FourierProfile operator*(double s, const FourierProfile& a) {
  FourierProfile out = a;
  for (double& x : out.c) x *= s;
  return out;
}

// Complex samples at the equispaced nodes θ_j = 2πj/J.
struct GridValues {
  std::vector<std::complex<double>> v;
  int size() const { return static_cast<int>(v.size()); }
};

inline double grid_theta(int j, int J) { return 2.0 * std::numbers::pi * j / J; }

// values[j] = Σ_n f_n e^{i n θ_j}. Direct summation: deterministic, exact to
// roundoff, and fast at the truncations used here (M ≤ 128).
inline GridValues synthesize(const FourierProfile& p, int J) {
  if (J < 2 * p.M + 1)
    throw ConfigError("grid size " + std::to_string(J) + " too small for truncation M=" +
                      std::to_string(p.M) + " (aliasing)");
  GridValues g;
  g.v.assign(J, {0.0, 0.0});
  for (int j = 0; j < J; ++j) {
    const double th = grid_theta(j, J);
    std::complex<double> acc = 0.0;
    for (int n = -p.M; n <= p.M; ++n) {
      const double fn = p.c[n + p.M];
      if (fn != 0.0) acc += fn * std::polar(1.0, n * th);
    }
    g.v[j] = acc;
  }
  return g;
}

// f_n = (1/J) Σ_j values[j] e^{−i n θ_j}, imaginary parts discarded after a
// symmetry check: any recovered coefficient with |Im| exceeding `symtol`
// relative to the largest coefficient magnitude signals that the sampled
// function left the real-coefficient class.
inline FourierProfile analyze(const GridValues& g, int M, int mfold = 1,
                              double symtol = 1e-10) {
  const int J = g.size();
  if (J < 2 * M + 1)
    throw ConfigError("grid size " + std::to_string(J) + " too small for truncation M=" +
                      std::to_string(M));
  std::vector<std::complex<double>> raw(2 * M + 1);
  double maxmag = 0.0;
  for (int n = -M; n <= M; ++n) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < J; ++j) acc += g.v[j] * std::polar(1.0, -n * grid_theta(j, J));
    raw[n + M] = acc / static_cast<double>(J);
    maxmag = std::max(maxmag, std::abs(raw[n + M]));
  }
  const double floor_mag = std::max(maxmag, 1e-30);
  FourierProfile p(M, mfold);
  for (int n = -M; n <= M; ++n) {
    if (std::abs(raw[n + M].imag()) > symtol * floor_mag)
      throw DomainError("symmetry violation: coefficient at mode " + std::to_string(n) +
                        " has imaginary part " + std::to_string(raw[n + M].imag()));
    p.c[n + M] = raw[n + M].real();
  }
  return p;
}

// order 1: series of w f'(w)   (coefficient n·f_n),
// order 2: series of w² f''(w) (coefficient n(n−1)·f_n).
inline FourierProfile wderiv(const FourierProfile& p, int order) {
  if (order != 1 && order != 2) throw ConfigError("wderiv order must be 1 or 2");
  FourierProfile out(p.M, p.mfold);
  for (int n = -p.M; n <= p.M; ++n) {
    const double fac = (order == 1) ? n : static_cast<double>(n) * (n - 1);
    out.c[n + p.M] = fac * p.c[n + p.M];
  }
  return out;
}

// Series of conj(f(w)) on |w| = 1: real coefficients make conjugation a pure
// mode reflection n → −n.
inline FourierProfile conj_reflect(const FourierProfile& p) {
  FourierProfile out(p.M, p.mfold);
  for (int n = -p.M; n <= p.M; ++n) out.c[-n + p.M] = p.c[n + p.M];
  return out;
}

// Zeroes all modes with n not divisible by m; optionally reports the discarded
// energy (sum of squares of removed coefficients).
inline FourierProfile project_mfold(const FourierProfile& p, int m,
                                    double* discarded_energy = nullptr) {
  if (m < 1) throw ConfigError("fold must be >= 1");
  FourierProfile out(p.M, m);
  double removed = 0.0;
  for (int n = -p.M; n <= p.M; ++n) {
    if (n % m == 0)
      out.c[n + p.M] = p.c[n + p.M];
    else
      removed += p.c[n + p.M] * p.c[n + p.M];
  }
  if (discarded_energy) *discarded_energy = removed;
  return out;
}

} // namespace vfb
