#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "feff/projgeo/projective.hpp"

namespace feff {

inline constexpr const char* kVersion = "0.3.0";

/// Γ^a_{bc} entries keyed by 1-based (a, b, c); a missing (a, c, b) partner is filled in.
struct RunConfig {
  int n = 0;
  std::map<std::array<int, 3>, std::string> gamma;
  std::vector<std::string> suites;
  int degree_cap = 40;
  std::string output_path;
  std::optional<std::uint64_t> seed;
};

struct Diagnostic {
  std::string where;
  std::string message;
};
std::string to_string(const Diagnostic& d);

/// YAML text. Structural problems (bad keys, wrong types) are appended to diags.
RunConfig parse_config(const std::string& text, std::vector<Diagnostic>& diags);
RunConfig load_config(const std::string& path, std::vector<Diagnostic>& diags);
/// Semantic checks: n range, index range, asymmetric pairs, expression errors, suite names and compatibility.
std::vector<Diagnostic> validate_config(const RunConfig& cfg);

/// Throws ParseError or DomainError; call validate_config first for complete diagnostics.
ProjectiveStructure build_structure(const RunConfig& cfg);
nlohmann::json config_json(const RunConfig& cfg);

struct RunResult {
  nlohmann::json report;
  bool failed = false;
};
/// Runs every configured suite (all compatible ones when none are listed).
/// DegreeCapExceeded propagates.
RunResult run_config(const RunConfig& cfg, std::uint64_t seed);

}  // namespace feff
