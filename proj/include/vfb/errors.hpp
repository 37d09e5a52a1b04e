#pragma once

#include <stdexcept>
#include <string>

namespace vfb {

// Process exit codes shared by the CLI and the error taxonomy:
//   0 ok, 2 config error, 3 numerical divergence, 4 domain violation, 5 I/O.
enum class ExitCode : int {
  ok = 0,
  config = 2,
  divergence = 3,
  domain = 4,
  io = 5,
};

struct Error : std::runtime_error {
  ExitCode code;
  Error(ExitCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Invalid parameter combinations, unparsable configuration, grids too small
// for the requested truncation.
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ExitCode::config, what) {}
};

// Inputs outside the mathematical domain: Hyperbolic radius >= 1, profile
// touching the disc boundary, denominator collapse, projection singularities,
// symmetry-class violations.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ExitCode::domain, what) {}
};

// Iterations that fail to contract, integrations that blow up, quadratures
// that fail to reach tolerance.
struct DivergenceError : Error {
  explicit DivergenceError(const std::string& what) : Error(ExitCode::divergence, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ExitCode::io, what) {}
};

} // namespace vfb
