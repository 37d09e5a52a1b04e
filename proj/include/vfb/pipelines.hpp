#pragma once

// Implementations of the command-line subcommands. Each takes a RunConfig,
// writes its artifacts under cfg.out, prints a short report to `os`, and
// throws a vfb::Error on failure (the driver maps these to exit codes).

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "vfb/continuation.hpp"
#include "vfb/errors.hpp"
#include "vfb/evolve.hpp"
#include "vfb/io.hpp"
#include "vfb/kida.hpp"
#include "vfb/reconstruct.hpp"
#include "vfb/spectral.hpp"
#include "vfb/verify.hpp"

namespace vfb {

struct RunConfig {
  Geometry geometry = Geometry::Euclidean;
  double a = 0.0;
  int m = 1;                     // fold / mode number
  int M = 64;                    // Fourier truncation
  std::string branch = "minus";  // radius branch: plus|minus
  double tol = 1e-11;
  double R = 0.0;     // trivial radius override (0 → eigenpair radius)
  double eta = 0.0;   // branch amplitude (0 → trivial solution)
  double eta_max = 0.05;
  int steps = 10;
  double t = 0.0;       // reconstruction time slice
  double t_final = 0.1; // evolution horizon
  double dt = 1e-4;     // evolution step
  int periods = 1;      // rendered filament periods
  int grid = 256;       // curve render nodes
  int n_max = 20;       // eigenvalue scan cutoff
  std::string out = "out";
};

namespace detail {

inline Provenance provenance_of(const RunConfig& cfg) {
  return Provenance{cfg.geometry, cfg.a, cfg.m, cfg.M, cfg.tol};
}

inline std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
  return std::filesystem::path(cfg.out) / name;
}

inline EigenRadius config_eigenpair(const RunConfig& cfg) {
  return find_eigenpair(cfg.geometry, cfg.a, cfg.m, parse_branch(cfg.branch));
}

// The profile to operate on: trivial helix at eta = 0, otherwise the branch
// point at the requested amplitude (traced from the bifurcation point).
inline std::pair<ProblemParams, FourierProfile> resolve_state(const RunConfig& cfg) {
  if (cfg.eta == 0.0) {
    double R = cfg.R;
    if (R == 0.0) R = config_eigenpair(cfg).R;
    ProblemParams p{cfg.geometry, cfg.a, R, 0.0, cfg.m, cfg.M};
    p.validate();
    return {p, FourierProfile(cfg.M, cfg.m)};
  }
  const auto eig = config_eigenpair(cfg);
  const Branch br = trace_branch(eig, cfg.M, cfg.eta, cfg.steps, cfg.tol);
  if (!br.complete)
    throw DivergenceError("branch trace failed before reaching eta: " + br.error);
  const auto& bp = br.points.back();
  return {bp.params, bp.f};
}

} // namespace detail

// -------------------------------------------------------------- eigenvalues
inline int cmd_eigenvalues(const RunConfig& cfg, std::ostream& os) {
  json data = json::array();
  os << "# n branch R admissible transversal\n";
  for (int n = 1; n <= cfg.n_max; ++n) {
    for (const auto& e : eigen_radii(n, cfg.geometry, cfg.a)) {
      json row;
      row["n"] = n;
      row["branch"] = branch_name(e.branch);
      row["r_squared"] = e.r_squared;
      row["R"] = e.R;
      row["admissible"] = e.admissible;
      if (e.admissible) {
        const auto t = transversality_ok(n, cfg.geometry, cfg.a, e.R);
        row["transversal"] = t.ok;
        row["transversality_inconclusive"] = t.inconclusive;
        row["transversality_margin"] = t.margin;
        const auto kv = kernel_vector(n, cfg.geometry, cfg.a, e.R);
        row["kernel_beta"] = kv.beta;
        os << n << " " << branch_name(e.branch) << " " << fmt17(e.R) << " yes "
           << (t.ok ? "yes" : "no") << "\n";
      } else {
        os << n << " " << branch_name(e.branch) << " - no -\n";
      }
      data.push_back(row);
    }
  }
  for (RadiusBranch br : {RadiusBranch::plus, RadiusBranch::minus}) {
    const auto am = admissible_modes(cfg.geometry, cfg.a, br, cfg.n_max);
    for (const auto& d : am.diagnostics)
      os << "note (" << branch_name(br) << "): " << d << "\n";
  }
  json j;
  j["meta"] = detail::provenance_of(cfg).meta("eigenvalues");
  j["data"] = data;
  write_json_file(detail::out_path(cfg, "eigenvalues.json"), j);
  return 0;
}

// ------------------------------------------------------------------- kernel
inline int cmd_kernel(const RunConfig& cfg, std::ostream& os) {
  const auto eig = detail::config_eigenpair(cfg);
  const auto kv = kernel_vector(cfg.m, cfg.geometry, cfg.a, eig.R);
  const auto t = transversality_ok(cfg.m, cfg.geometry, cfg.a, eig.R);
  const FourierProfile dr = dR_linearized_on_kernel(cfg.m, cfg.geometry, cfg.a, eig.R);
  const double op_defect = range_defect(dr, cfg.m, cfg.geometry, cfg.a, eig.R);
  os << "eigenpair: n=" << cfg.m << " R=" << fmt17(eig.R) << "\n"
     << "kernel beta=" << fmt17(kv.beta) << "\n"
     << "transversality: lhs=" << fmt17(t.lhs) << " rhs=" << fmt17(t.rhs)
     << " margin=" << fmt17(t.margin) << (t.ok ? " (satisfied)" : " (NOT satisfied)") << "\n"
     << "operator certificate defect=" << fmt17(op_defect) << "\n";
  json j;
  j["meta"] = detail::provenance_of(cfg).meta("kernel");
  json d;
  d["n"] = cfg.m;
  d["branch"] = branch_name(eig.branch);
  d["R"] = eig.R;
  d["beta"] = kv.beta;
  d["kernel"] = profile_to_json(kv.profile);
  d["transversal"] = t.ok;
  d["transversality_inconclusive"] = t.inconclusive;
  d["transversality_lhs"] = t.lhs;
  d["transversality_rhs"] = t.rhs;
  d["transversality_margin"] = t.margin;
  d["operator_defect"] = op_defect;
  j["data"] = json::array({d});
  write_json_file(detail::out_path(cfg, "kernel.json"), j);
  if (t.inconclusive)
    throw DomainError("transversality margin below 1e-10: bifurcation not certified");
  return 0;
}

// ---------------------------------------------------------------- bifurcate
inline int cmd_bifurcate(const RunConfig& cfg, std::ostream& os) {
  const auto eig = detail::config_eigenpair(cfg);
  const auto t = transversality_ok(cfg.m, cfg.geometry, cfg.a, eig.R);
  if (t.inconclusive)
    throw DomainError("transversality margin below 1e-10: refusing to bifurcate");
  const Branch br = trace_branch(eig, cfg.M, cfg.eta_max, cfg.steps, cfg.tol);
  const auto prov = detail::provenance_of(cfg);
  write_branch_csv(detail::out_path(cfg, "branch.csv"), br, prov);
  json data = json::array();
  for (size_t i = 0; i < br.points.size(); ++i) {
    const auto& bp = br.points[i];
    std::ostringstream name;
    name << "profile_" << std::setw(4) << std::setfill('0') << (i + 1) << ".csv";
    const auto sample = curve_from_tangent(bp.params, bp.f, 0.0, cfg.grid, cfg.periods);
    write_profile_csv(detail::out_path(cfg, name.str()), sample, prov);
    json row;
    row["eta"] = bp.eta;
    row["lambda"] = bp.params.lambda;
    row["R"] = bp.params.R;
    row["residual_inf"] = bp.residual_inf;
    row["residual_refined"] = recheck_residual(bp, 2);
    row["newton_iters"] = bp.newton_iters;
    row["f_norm"] = bp.f.two_norm();
    row["kernel_angle"] = bp.kernel_angle;
    row["cond_warning"] = bp.cond_warning;
    row["profile_file"] = name.str();
    data.push_back(row);
    os << "eta=" << fmt17(bp.eta) << " lambda=" << fmt17(bp.params.lambda)
       << " R=" << fmt17(bp.params.R) << " res=" << fmt17(bp.residual_inf)
       << " iters=" << bp.newton_iters << "\n";
  }
  json j;
  j["meta"] = prov.meta("bifurcate");
  json summary;
  summary["eigen_R"] = eig.R;
  summary["beta"] = br.beta;
  summary["direction"] = br.direction;
  summary["complete"] = br.complete;
  summary["error"] = br.error;
  summary["points"] = data;
  if (br.points.size() >= 2) {
    const auto& p1 = br.points[0];
    const auto& p2 = br.points[1];
    summary["lambda_extrapolated"] = (4.0 * p1.params.lambda - p2.params.lambda) / 3.0;
    summary["R_extrapolated"] = (4.0 * p1.params.R - p2.params.R) / 3.0;
  }
  j["data"] = json::array({summary});
  write_json_file(detail::out_path(cfg, "summary.json"), j);
  if (!br.complete)
    throw DivergenceError("branch trace stopped early: " + br.error);
  return 0;
}

// -------------------------------------------------------------- reconstruct
inline int cmd_reconstruct(const RunConfig& cfg, std::ostream& os) {
  auto [p, f] = detail::resolve_state(cfg);
  const auto sample = curve_from_tangent(p, f, cfg.t, cfg.grid, cfg.periods);
  const auto prov = detail::provenance_of(cfg);
  write_profile_csv(detail::out_path(cfg, "profile.csv"), sample, prov);
  os << "reconstructed " << sample.s.size() << " nodes at t=" << fmt17(cfg.t)
     << " (R=" << fmt17(p.R) << ", lambda=" << fmt17(p.lambda) << ")\n";
  return 0;
}

// ------------------------------------------------------------- check-steady
inline int cmd_check_steady(const RunConfig& cfg, std::ostream& os) {
  auto [p, f] = detail::resolve_state(cfg);
  const auto rep = steadiness_error(p, f, cfg.t_final, cfg.dt);
  json j;
  j["meta"] = detail::provenance_of(cfg).meta("check-steady");
  json d;
  d["max_rel_error"] = rep.max_rel_error;
  d["dt_used"] = rep.dt_used;
  d["halvings"] = rep.halvings;
  json cps = json::array();
  for (size_t i = 0; i < rep.checkpoint_times.size(); ++i) {
    json c;
    c["t"] = rep.checkpoint_times[i];
    c["rel_error"] = rep.checkpoint_errors[i];
    cps.push_back(c);
  }
  d["checkpoints"] = cps;
  j["data"] = json::array({d});
  write_json_file(detail::out_path(cfg, "steady.json"), j);
  os << "steadiness deviation over t in [0," << fmt17(cfg.t_final)
     << "]: " << fmt17(rep.max_rel_error) << "\n";
  return 0;
}

// --------------------------------------------------------------- kida-check
inline int cmd_kida_check(const RunConfig& cfg, std::ostream& os) {
  auto [p, f] = detail::resolve_state(cfg);
  const auto sample = curve_from_tangent(p, f, 0.0, cfg.grid);
  const double mv = modulus_variation(sample.z0);
  json d;
  d["modulus_variation"] = mv;
  os << "modulus variation: " << fmt17(mv) << "\n";
  if (cfg.geometry == Geometry::Euclidean) {
    // parent helix of the configured state
    const double Rp = (cfg.eta == 0.0) ? p.R : detail::config_eigenpair(cfg).R;
    const double T3 = (1.0 - Rp * Rp) / (1.0 + Rp * Rp);
    const double th2 = 4.0 * Rp * Rp / ((1.0 + Rp * Rp) * (1.0 + Rp * Rp));
    const auto fit = fit_helix_parameters(T3, th2, omega_trivial(cfg.geometry, cfg.a, Rp), cfg.a);
    d["helix_fit_A"] = fit.params.A;
    d["helix_fit_V"] = fit.params.V;
    d["helix_fit_defect"] = fit.defect;
    os << "parent helix fit: A=" << fmt17(fit.params.A) << " V=" << fmt17(fit.params.V)
       << " defect=" << fmt17(fit.defect) << "\n";
    if (cfg.eta == 0.0) {
      const double defect = kida_compatibility_defect(sample.T0, fit.params);
      d["compatibility_defect"] = defect;
      os << "compatibility defect at fit: " << fmt17(defect) << "\n";
    } else {
      KidaParams center{fit.params.A, fit.params.V, p.omega(), cfg.a};
      const auto scan = defect_grid_min(sample.T0, center, 1.0, 100);
      d["family_margin"] = scan.min_defect;
      d["margin_at_A"] = scan.best_A;
      d["margin_at_V"] = scan.best_V;
      os << "family margin (min defect over local (A,V) grid): " << fmt17(scan.min_defect)
         << "\n";
    }
    const auto bc = beta_cubic(fit.params.A, fit.params.V, p.omega(), cfg.a);
    d["beta_cubic"] = json::array({bc[0], bc[1], bc[2], bc[3]});
  }
  json j;
  j["meta"] = detail::provenance_of(cfg).meta("kida-check");
  j["data"] = json::array({d});
  write_json_file(detail::out_path(cfg, "kida.json"), j);
  return 0;
}

// ------------------------------------------------------------------- verify
inline int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  const auto results = run_invariant_checks();
  json data = json::array();
  bool all = true;
  for (const auto& cr : results) {
    os << (cr.pass ? "[PASS] " : "[FAIL] ") << cr.criterion << ". " << cr.name << ": "
       << cr.detail << "\n";
    json row;
    row["criterion"] = cr.criterion;
    row["name"] = cr.name;
    row["pass"] = cr.pass;
    row["detail"] = cr.detail;
    data.push_back(row);
    all = all && cr.pass;
  }
  json j;
  j["meta"] = detail::provenance_of(cfg).meta("verify");
  j["data"] = data;
  write_json_file(detail::out_path(cfg, "verify.json"), j);
  os << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
  if (!all) throw DivergenceError("invariant checks failed");
  return 0;
}

} // namespace vfb
