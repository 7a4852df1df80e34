#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "feff/projgeo/projective.hpp"

namespace feff {

/// `measured` records a value that is reported but not asserted.
enum class ClaimStatus { verified, counterexample, skipped, measured };
std::string to_string(ClaimStatus s);

struct Claim {
  std::string id;
  ClaimStatus status = ClaimStatus::skipped;
  std::string witness;
  double millis = 0;
};

struct SuiteReport {
  std::string id;
  std::vector<Claim> claims;
  bool failed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Degree of the polynomial ansatz used for solution-space counts.
  int ansatz_degree = 2;
};

/// projective, dim2, highdim, normalize, twistor, einstein2d.
const std::vector<std::string>& suite_names();
bool suite_requires_dim2(const std::string& id);

/// Throws DomainError for an unknown suite or a suite incompatible with ps.n.
/// DegreeCapExceeded propagates; other library errors become counterexamples.
SuiteReport run_suite(const std::string& id, const ProjectiveStructure& ps, const SuiteOptions& opt);

}  // namespace feff
