#pragma once

#include "ybe/sklyanin.hpp"

// Baxter's 8-vertex R-matrix, the Lax operators for the Sklyanin algebra and
// for both halves of the elliptic modular double (direct and factorized
// forms), and Yang-Baxter / RLL residual checkers.

namespace ybe {

enum class LaxVariant { sklyanin, doub, doub_tilde };

// Light-cone combination of spectral parameter and spin:
// u1 = (u + g)/2, u2 = (u - g)/2 (equivalently u/2 +- (eta l + eta/2)).
struct SpectralParams {
  cd u;
  cd g;
  cd u1() const { return 0.5 * (u + g); }
  cd u2() const { return 0.5 * (u - g); }
  static SpectralParams from_lightcone(cd u1, cd u2) { return {u1 + u2, u1 - u2}; }
};

// w_a(u) = theta_{a+1}(u + eta) / theta_{a+1}(eta); the tilded set swaps
// (eta, tau) -> (tau/2, 2 eta).
std::array<cd, 4> weights(cd u, bool tilde, const ModularParams& mp);

// Pauli matrix sigma_a as a 2x2 block, a = 0..3.
CMatrix pauli(int a);

// 4x4 Baxter R-matrix sum_a w_a(u) sigma_a (x) sigma_a, rows (i,k) = 2i + k.
CMatrix baxter_r(cd u, bool tilde, const ModularParams& mp);

// Lax operator sum_a w_a(u) sigma_a (x) S^a as a 2x2 matrix of difference
// operators in the quantum space.
OperatorMatrix lax_l(SpectralParams sp, LaxVariant variant, const ModularParams& mp);

// The factorized triple-matrix form (theta matrix, diagonal shift, theta
// matrix), Gaussian-conjugated for the modular-double variants.
OperatorMatrix lax_l_factorized(SpectralParams sp, LaxVariant variant,
                                const ModularParams& mp);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Max-norm residual of the Yang-Baxter equation
// R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v) for a 4x4 R family.
double ybe_residual(const std::function<CMatrix(cd)>& r, cd u, cd v);

// Pointwise agreement of two operator matrices applied to the test family.
double operator_matrix_residual(const OperatorMatrix& a, const OperatorMatrix& b,
                                const ModularParams& mp, std::uint64_t seed,
                                int points = 10);

// RLL residual with one shared quantum space:
//   R12(u-v) L13(u) L23(v) = L23(v) L13(u) R12(u-v),
// both sides 4x4 matrices of operators applied to test functions.  With
// twist=true the Lax matrices are right-multiplied by sigma3 in their own
// auxiliary spaces.
double rll_residual(const CMatrix& r, const OperatorMatrix& lu, const OperatorMatrix& lv,
                    const ModularParams& mp, std::uint64_t seed, int points = 6,
                    bool twist = false);

// Restriction of a 2x2 operator matrix to a finite invariant basis of the
// quantum space: returns the (2 dim) x (2 dim) matrix with rows (i,k),
// i auxiliary, k quantum.
CMatrix restrict_to_basis(const OperatorMatrix& l, const BasisSet& basis,
                          const ModularParams& mp, std::uint64_t seed,
                          double* residual = nullptr);

// Finite RLL residual on aux (x) aux (x) V for numeric restrictions.
double rll_matrix_residual(const CMatrix& r, const CMatrix& lu, const CMatrix& lv, int dim);

// Numeric finite-dimensional Lax matrix sum_a w_a(u) sigma_a (x) M^a from
// generator matrices, rows (i,k).
CMatrix lax_from_matrices(cd u, bool tilde, const std::array<CMatrix, 4>& mats,
                          const ModularParams& mp);

// Two-space twisted RLL residual for a numeric R on V1 (x) V2 and finite Lax
// matrices L1 (aux x V1), L2 (aux x V2):
//   R L1(u) sigma3 L2(v) = L2(v) sigma3 L1(u) R
// on the total space aux (x) V1 (x) V2; returns a normalized max-norm.
double rll_two_space_residual(const CMatrix& r12, const CMatrix& l1, const CMatrix& l2,
                              int d1, int d2);

}  // namespace ybe
