#pragma once

#include <array>

#include "ybe/basis.hpp"

// Generators of the Sklyanin algebra and of both halves of the elliptic
// modular double as difference operators, their structure constants and
// Casimir values, residual checkers for the commutation relations, and
// matrix representations on finite bases.

namespace ybe {

// Spin bookkeeping: g = eta (2 l + 1).
struct SpinParams {
  cd ell;
  cd g;

  static SpinParams from_ell(cd ell, const ModularParams& mp) {
    return {ell, mp.eta() * (2.0 * ell + 1.0)};
  }
  static SpinParams from_g(cd g, const ModularParams& mp) {
    return {0.5 * (g / mp.eta() - 1.0), g};
  }
};

struct StructureConstants {
  cd J12, J23, J31;
  cd J1, J2, J3;

  // Theta parametrization with modulus tau and argument eta; the tilded set
  // swaps the quasiperiods 2 eta <-> tau.
  static StructureConstants plain(const ModularParams& mp);
  static StructureConstants tilded(const ModularParams& mp);

  // |J12 + J23 + J31 + J12 J23 J31|.
  double constraint_residual() const;
  // max deviation of J_{ab} from (J_b - J_a) / J_c.
  double ratio_residual() const;
};

// Sklyanin generator S^alpha.  modified=false gives the plain realization
// with coefficients theta_{a+1}(+-2z - 2 eta l); modified=true the
// Gaussian-conjugated g-spin form with arguments (+-2z - g + eta) and the
// factor e^{pi i z^2/eta} folded into the coefficients.
DifferenceOperator generator_S(int alpha, SpinParams spin, bool modified,
                               const ModularParams& mp);

// Second-half generator with theta(.|2 eta) coefficients, shifts +-tau/2 and
// Gaussian factor e^{2 pi i z^2/tau} folded in.
DifferenceOperator generator_S_tilde(int alpha, cd g, const ModularParams& mp);

std::array<DifferenceOperator, 4> generators_S(SpinParams spin, bool modified,
                                               const ModularParams& mp);
std::array<DifferenceOperator, 4> generators_S_tilde(cd g, const ModularParams& mp);

// Max normalized residual of all six commutation relations applied to the
// test-function family at seeded points.
double relations_residual(const std::array<DifferenceOperator, 4>& S,
                          const StructureConstants& J, const ModularParams& mp,
                          std::uint64_t seed, int points = 20);

// Cross-commutation between the two halves: S^a and ~S^b commute when a, b
// are both in {0,3} or both in {1,2} and anticommute otherwise.
double cross_relations_residual(const std::array<DifferenceOperator, 4>& S,
                                const std::array<DifferenceOperator, 4>& St,
                                const ModularParams& mp, std::uint64_t seed,
                                int points = 20);

struct CasimirReport {
  cd k0_expected, k2_expected;
  double k0_residual = 0.0;         // K0 acting as its scalar
  double k2_residual = 0.0;         // K2 acting as its scalar
  double commutant_residual = 0.0;  // worst [K, S^alpha] residual
};

// Applies K0 = sum_a S^a S^a and K2 = sum_a J_a S^a S^a to test functions and
// compares with the scalar values 4 theta1^2(g) and 4 theta1(g-eta) theta1(g+eta)
// (quasiperiods swapped for the tilded half).
CasimirReport casimir_check(SpinParams spin, bool modified, bool tilded,
                            const ModularParams& mp, std::uint64_t seed);

// Matrices M^a with S^a phi_j = sum_k phi_k M^a_{kj}, via fit_in_basis.
// A membership residual above tol means the span is not invariant; that is
// reported as a FitError, not silently truncated.
CMatrix matrix_rep(const DifferenceOperator& op, const BasisSet& basis,
                   const ModularParams& mp, std::uint64_t seed, double* residual = nullptr,
                   double tol = 1e-8);
std::array<CMatrix, 4> matrix_rep(const std::array<DifferenceOperator, 4>& S,
                                  const BasisSet& basis, const ModularParams& mp,
                                  std::uint64_t seed, double* residual = nullptr,
                                  double tol = 1e-8);

// The Sklyanin relations as finite matrix identities.
double matrix_relations_residual(const std::array<CMatrix, 4>& S,
                                 const StructureConstants& J);

}  // namespace ybe
