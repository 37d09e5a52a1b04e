#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfb/continuation.hpp"
#include "vfb/errors.hpp"
#include "vfb/geometry.hpp"
#include "vfb/reconstruct.hpp"
#include "vfb/version.hpp"

namespace vfb {

using json = nlohmann::json;

// All floating-point output uses 17 significant digits so files round-trip
// bit-exactly and repeated runs compare byte-identical.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Run provenance stamped on every artifact.
struct Provenance {
  Geometry geometry = Geometry::Euclidean;
  double a = 0.0;
  int m = 1;
  int M = 0;
  double tol = 1e-11;

  std::string comment_line() const {
    std::ostringstream os;
    os << "# geometry=" << geometry_name(geometry) << " a=" << fmt17(a) << " m=" << m
       << " M=" << M << " tol=" << fmt17(tol);
    return os.str();
  }

  json meta(const std::string& command) const {
    json m_;
    m_["geometry"] = geometry_name(geometry);
    m_["a"] = a;
    m_["m"] = m;
    m_["M"] = M;
    m_["tol"] = tol;
    m_["command"] = command;
    m_["version"] = version;
    return m_;
  }
};

namespace detail {

inline void json_escape(std::ostream& os, const std::string& s) {
  os << '"';
  for (char ch : s) {
    switch (ch) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          os << buf;
        } else {
          os << ch;
        }
    }
  }
  os << '"';
}

// Deterministic serializer: object keys in sorted order (nlohmann's default
// map), floats at 17 significant digits.
inline void dump_json17(std::ostream& os, const json& j, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad1(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad1;
        json_escape(os, it.key());
        os << ": ";
        dump_json17(os, it.value(), indent, depth + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << pad1;
        dump_json17(os, v, indent, depth + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::string: json_escape(os, j.get<std::string>()); return;
    case json::value_t::boolean: os << (j.get<bool>() ? "true" : "false"); return;
    case json::value_t::number_integer: os << j.get<long long>(); return;
    case json::value_t::number_unsigned: os << j.get<unsigned long long>(); return;
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) os << fmt17(v);
      else os << "null";  // JSON has no literal for NaN/inf
      return;
    }
    case json::value_t::null: os << "null"; return;
    default: os << "null"; return;
  }
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream os(path, std::ios::binary);  // binary: fixed newline bytes
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

} // namespace detail

inline std::string json_to_string(const json& j) {
  std::ostringstream os;
  detail::dump_json17(os, j, 2, 0);
  os << "\n";
  return os.str();
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  auto os = detail::open_out(path);
  os << json_to_string(j);
  if (!os) throw IoError("failed writing " + path.string());
}

// profile CSV: one row per arclength node of a curve sample.
inline void write_profile_csv(const std::filesystem::path& path, const CurveSample& sample,
                              const Provenance& prov) {
  auto os = detail::open_out(path);
  os << prov.comment_line() << "\n";
  os << "s,re_z,im_z,T1,T2,T3,X1,X2,X3\n";
  for (size_t j = 0; j < sample.s.size(); ++j) {
    os << fmt17(sample.s[j]) << ',' << fmt17(sample.z0[j].real()) << ','
       << fmt17(sample.z0[j].imag()) << ',' << fmt17(sample.T0[j][0]) << ','
       << fmt17(sample.T0[j][1]) << ',' << fmt17(sample.T0[j][2]) << ','
       << fmt17(sample.X[j][0]) << ',' << fmt17(sample.X[j][1]) << ','
       << fmt17(sample.X[j][2]) << "\n";
  }
  if (!os) throw IoError("failed writing " + path.string());
}

// branch CSV: one row per continuation point.
inline void write_branch_csv(const std::filesystem::path& path, const Branch& branch,
                             const Provenance& prov) {
  auto os = detail::open_out(path);
  os << prov.comment_line() << "\n";
  os << "eta,R,lambda,residual_inf,newton_iters,f_norm\n";
  for (const auto& bp : branch.points) {
    os << fmt17(bp.eta) << ',' << fmt17(bp.params.R) << ',' << fmt17(bp.params.lambda) << ','
       << fmt17(bp.residual_inf) << ',' << bp.newton_iters << ',' << fmt17(bp.f.two_norm())
       << "\n";
  }
  if (!os) throw IoError("failed writing " + path.string());
}

// key=value run configuration files ('#' starts a comment; blank lines ok).
inline std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file " + path.string() + " line " + std::to_string(lineno) +
                        ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config file " + path.string() + " line " +
                                       std::to_string(lineno) + ": empty key");
    out[key] = val;
  }
  return out;
}

// Serialized profile coefficients for JSON artifacts.
inline json profile_to_json(const FourierProfile& f) {
  json arr = json::array();
  for (int n = -f.M; n <= f.M; ++n) {
    if (f.at(n) == 0.0 && n != 0) continue;
    json e;
    e["n"] = n;
    e["value"] = f.at(n);
    arr.push_back(e);
  }
  return arr;
}

} // namespace vfb
