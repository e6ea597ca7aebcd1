#pragma once

#include "ybe/report.hpp"

// Named verification suites covering every identity the library implements,
// shared by the command line driver and the acceptance tests.  Checks are
// deterministic functions of (tau, eta, eps, quad_points, seed).

namespace ybe {

std::vector<std::string> suite_names();

// suite: one of suite_names() or "all".  Throws DomainError for unknown names.
VerificationReport run_suite(const std::string& suite, const RunConfig& cfg);

}  // namespace ybe
