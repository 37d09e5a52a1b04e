// Command-line driver.  Subcommands:
//   eigenvalues  scan candidate bifurcation radii and certificates
//   kernel       kernel vector / transversality at one bifurcation point
//   bifurcate    trace the nontrivial branch, write branch.csv + profiles
//   reconstruct  render a filament slice to profile.csv
//   check-steady evolve the filament and compare with the rigid-motion orbit
//   kida-check   closed-form family discrimination diagnostics
//   verify       run the built-in invariant checks
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical divergence,
// 4 domain violation, 5 I/O failure.

#include <algorithm>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vfb/vfb.hpp"

namespace {

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw vfb::ConfigError("bad numeric value for '" + key + "': " + value);
  }
}

int to_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw vfb::ConfigError("bad integer value for '" + key + "': " + value);
  }
}

// Config-file values fill in only options not given on the command line
// (precedence: flags > file > defaults).
void apply_config_file(const CLI::App* sub, const std::string& path, vfb::RunConfig& cfg,
                       std::string& geometry) {
  const auto entries = vfb::read_config_file(path);
  for (const auto& [raw_key, value] : entries) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '-', '_');
    const auto cli_given = [&](const char* flag) { return sub->count(flag) > 0; };
    if (key == "geometry") {
      if (!cli_given("--geometry")) geometry = value;
    } else if (key == "a") {
      if (!cli_given("--a")) cfg.a = to_double(key, value);
    } else if (key == "m") {
      if (!cli_given("--m")) cfg.m = to_int(key, value);
    } else if (key == "M" || key == "truncation") {
      if (!cli_given("--truncation")) cfg.M = to_int(key, value);
    } else if (key == "branch") {
      if (!cli_given("--branch")) cfg.branch = value;
    } else if (key == "tol") {
      if (!cli_given("--tol")) cfg.tol = to_double(key, value);
    } else if (key == "R") {
      if (!cli_given("--radius")) cfg.R = to_double(key, value);
    } else if (key == "eta") {
      if (!cli_given("--eta")) cfg.eta = to_double(key, value);
    } else if (key == "eta_max") {
      if (!cli_given("--eta-max")) cfg.eta_max = to_double(key, value);
    } else if (key == "steps") {
      if (!cli_given("--steps")) cfg.steps = to_int(key, value);
    } else if (key == "t") {
      if (!cli_given("--t")) cfg.t = to_double(key, value);
    } else if (key == "t_final") {
      if (!cli_given("--t-final")) cfg.t_final = to_double(key, value);
    } else if (key == "dt") {
      if (!cli_given("--dt")) cfg.dt = to_double(key, value);
    } else if (key == "periods") {
      if (!cli_given("--periods")) cfg.periods = to_int(key, value);
    } else if (key == "grid") {
      if (!cli_given("--grid")) cfg.grid = to_int(key, value);
    } else if (key == "n_max") {
      if (!cli_given("--n-max")) cfg.n_max = to_int(key, value);
    } else if (key == "out") {
      if (!cli_given("--out")) cfg.out = value;
    } else {
      throw vfb::ConfigError("unknown configuration key '" + raw_key + "' in " + path);
    }
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating-slipping vortex filament toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", vfb::version);

  vfb::RunConfig cfg;
  std::string geometry = "euclidean";
  std::string config_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-g,--geometry", geometry, "euclidean|hyperbolic");
    sub->add_option("-a,--a", cfg.a, "slip parameter a");
    sub->add_option("-m,--m", cfg.m, "bifurcation mode / fold number");
    sub->add_option("-M,--truncation", cfg.M, "Fourier truncation");
    sub->add_option("--branch", cfg.branch, "radius branch: plus|minus");
    sub->add_option("--tol", cfg.tol, "Newton residual tolerance");
    sub->add_option("-R,--radius", cfg.R, "trivial radius override (0 = eigenpair radius)");
    sub->add_option("--eta", cfg.eta, "branch amplitude (0 = trivial solution)");
    sub->add_option("--eta-max", cfg.eta_max, "largest branch amplitude to reach");
    sub->add_option("--steps", cfg.steps, "continuation steps");
    sub->add_option("--t", cfg.t, "time of the rendered slice");
    sub->add_option("--t-final", cfg.t_final, "evolution horizon");
    sub->add_option("--dt", cfg.dt, "evolution time step");
    sub->add_option("--periods", cfg.periods, "filament periods to render");
    sub->add_option("--grid", cfg.grid, "curve render nodes");
    sub->add_option("--n-max,--nmax", cfg.n_max, "mode scan cutoff");
    sub->add_option("-o,--out", cfg.out, "output directory");
    sub->add_option("--config", config_path, "key=value configuration file");
  };

  add_common(app.add_subcommand("eigenvalues", "scan candidate bifurcation radii"));
  add_common(app.add_subcommand("kernel", "kernel and transversality at one mode"));
  add_common(app.add_subcommand("bifurcate", "trace the nontrivial branch"));
  add_common(app.add_subcommand("reconstruct", "render a filament slice"));
  add_common(app.add_subcommand("check-steady", "certify rigid rotating-slipping motion"));
  add_common(app.add_subcommand("kida-check", "closed-form family discrimination"));
  add_common(app.add_subcommand("verify", "run the built-in invariant checks"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(vfb::ExitCode::config);
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config_file(sub, config_path, cfg, geometry);
    cfg.geometry = vfb::parse_geometry(geometry);
    const std::string name = sub->get_name();
    if (name == "eigenvalues") return vfb::cmd_eigenvalues(cfg, std::cout);
    if (name == "kernel") return vfb::cmd_kernel(cfg, std::cout);
    if (name == "bifurcate") return vfb::cmd_bifurcate(cfg, std::cout);
    if (name == "reconstruct") return vfb::cmd_reconstruct(cfg, std::cout);
    if (name == "check-steady") return vfb::cmd_check_steady(cfg, std::cout);
    if (name == "kida-check") return vfb::cmd_kida_check(cfg, std::cout);
    if (name == "verify") return vfb::cmd_verify(cfg, std::cout);
    throw vfb::ConfigError("unknown subcommand: " + name);
  } catch (const vfb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(vfb::ExitCode::divergence);
  }
}
