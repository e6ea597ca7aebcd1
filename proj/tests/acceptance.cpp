// Acceptance suite: every criterion is evaluated at its pinned tolerance at
// the default parameters (tau = 0.20+1.00i, eta = 0.35+0.40i) with seeded
// sampling, and prints exactly one pass/fail line.  Exit status is the
// conjunction of all criteria.

#include <chrono>
#include <cstdio>
#include <map>
#include <vector>

#include "ybe/suites.hpp"

using namespace ybe;

namespace {

struct Criterion {
  std::string name;
  std::vector<std::string> check_ids;  // all must pass with residual <= tol
  double tol;
  double time_budget_s;  // 0 = untimed
};

}  // namespace

int main() {
  RunConfig cfg;
  cfg.timings = true;

  const auto t0 = std::chrono::steady_clock::now();
  const VerificationReport report = run_suite("all", cfg);
  const double total_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::map<std::string, CheckResult> by_id;
  std::map<std::string, double> suite_seconds;
  for (const auto& c : report.checks) {
    by_id[c.id] = c;
    suite_seconds[c.id.substr(0, c.id.find('.'))] += c.seconds;
  }

  const std::vector<Criterion> criteria = {
      {"01 special-function identities (100 pts)",
       {"core.theta.bilinear", "core.gamma.shifts", "core.gamma.reflection",
        "core.gamma.quasiperiod_symmetry"},
       1e-10, 5.0},
      {"02 elliptic beta integral (5 parameter sets)",
       {"intertwiner.beta.integral"},
       1e-6, 10.0},
      {"03 star-triangle operator identity",
       {"intertwiner.star.triangle"},
       1e-6, 30.0},
      {"04 sklyanin relations and casimirs",
       {"sklyanin.relations.plain", "sklyanin.relations.modified", "sklyanin.relations.lattice",
        "sklyanin.relations.tilded", "sklyanin.relations.cross", "sklyanin.casimir.scalars",
        "sklyanin.casimir.commutant"},
       1e-9, 0.0},
      {"04b casimir g -> -g symmetry",
       {"sklyanin.casimir.reflection"},
       1e-13, 0.0},
      {"05 l=1/2 reduction to pauli and baxter",
       {"sklyanin.pauli.reduction", "lax.lax.restriction"},
       1e-10, 0.0},
      {"06 baxter YBE, plain and tilded (20 pts)",
       {"lax.baxter.ybe", "lax.baxter.ybe_tilded"},
       1e-10, 0.0},
      {"07 lax factorization and sigma3 shift",
       {"lax.lax.factorized", "lax.lax.sigma3_shift"},
       1e-10, 0.0},
      {"08 intertwiner lattice structure",
       {"intertwiner.m.initial", "intertwiner.m.contiguous", "intertwiner.m.k_independence",
        "intertwiner.m.path_independence"},
       1e-10, 0.0},
      {"08b null space and intertwining relations",
       {"intertwiner.m.null_space", "intertwiner.m.intertwining"},
       1e-9, 0.0},
      {"09 inversion on even test functions",
       {"intertwiner.inversion"},
       1e-6, 60.0},
      {"10 fusion of baxter R (n <= 4)",
       {"fusion.fuse.closed_form", "fusion.fuse.generators"},
       1e-9, 0.0},
      {"10b fused generators vs matrix representation",
       {"fusion.fuse.vs_matrix_rep"},
       1e-8, 0.0},
      {"11 central reduction to the twisted lax operator",
       {"reduction.central.l_operator", "reduction.worked.two_dim"},
       1e-8, 0.0},
      {"11b reduction agrees with fusion (4 reps)",
       {"reduction.fuse.vs_reduce"},
       1e-7, 0.0},
      {"12 finite R-matrices intertwine fused lax pairs",
       {"reduction.rll.both_spaces"},
       1e-8, 0.0},
  };

  bool all_pass = true;
  for (const auto& crit : criteria) {
    double worst = 0.0;
    double seconds = 0.0;
    bool found = true;
    for (const auto& id : crit.check_ids) {
      const auto it = by_id.find(id);
      if (it == by_id.end()) {
        found = false;
        break;
      }
      worst = std::max(worst, it->second.residual);
      seconds += it->second.seconds;
    }
    bool pass = found && worst <= crit.tol;
    if (crit.time_budget_s > 0.0 && seconds > crit.time_budget_s) pass = false;
    all_pass = all_pass && pass;
    if (crit.time_budget_s > 0.0)
      std::printf("[%s] %-48s residual %.3e (tol %.0e), %.1fs (budget %.0fs)\n",
                  pass ? "PASS" : "FAIL", crit.name.c_str(), worst, crit.tol, seconds,
                  crit.time_budget_s);
    else
      std::printf("[%s] %-48s residual %.3e (tol %.0e)\n", pass ? "PASS" : "FAIL",
                  crit.name.c_str(), worst, crit.tol);
  }

  const bool run_all_ok = report.pass() && total_s < 120.0;
  all_pass = all_pass && run_all_ok;
  std::printf("[%s] %-48s %.1fs (budget 120s), aggregate %s\n", run_all_ok ? "PASS" : "FAIL",
              "12b full suite under budget", total_s, report.pass() ? "pass" : "FAIL");
  std::printf("%s\n", all_pass ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return all_pass ? 0 : 1;
}
