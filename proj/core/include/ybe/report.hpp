#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ybe/elliptic.hpp"

// Run configuration and machine-readable verification reports.

namespace ybe {

struct RunConfig {
  cd tau{0.20, 1.00};
  cd eta{0.35, 0.40};
  double eps = 1e-13;
  int quad_points = 64;
  std::uint64_t seed = 75025;
  std::map<std::string, double> tolerance_overrides;  // suite/check id -> tol
  bool timings = false;  // wall times make reports non-reproducible; opt-in

  // Throws DomainError naming the violated constraint.
  void validate() const;
  ModularParams params() const { return ModularParams(tau, eta, {eps, 512}); }

  // key=value lines; '#' comments.  Unknown keys are rejected.
  static RunConfig from_file(const std::string& path);
  void apply_key(const std::string& key, const std::string& value);
};

struct CheckResult {
  std::string id;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  double seconds = 0.0;
  std::string error;  // exception text when the check itself failed to run
};

struct VerificationReport {
  std::string suite;
  RunConfig config;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string to_json() const;
  // One aligned line per check plus an aggregate verdict.
  std::string to_text() const;
};

// "re+imi" or "re-imi" (also plain "re"), e.g. "0.20+1.00i".
cd parse_complex(const std::string& text);

}  // namespace ybe
