#pragma once

#include <Eigen/Dense>

#include "ybe/sampling.hpp"

// Finite-dimensional representation spaces: the (n+1)(m+1)-dimensional
// phi/psi theta-product bases attached to the spin lattices
//   g = h/2 + (n+1) eta + (m+1) tau/2,  h in {0,1},
// the elliptic-gamma generating function that packages them, and least
// squares fitting of functions into a basis.

namespace ybe {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FiniteRep {
  int n = 0;
  int m = 0;
  bool half = false;

  int dim() const { return (n + 1) * (m + 1); }
  cd g(const ModularParams& mp) const {
    return (half ? 0.5 : 0.0) + double(n + 1) * mp.eta() + double(m + 1) * 0.5 * mp.tau();
  }
  // Flat index for the (j, l) label, j = 0..n, l = 0..m.
  int flat(int j, int l) const { return j * (m + 1) + l; }
};

enum class BasisKind { phi, psi, sklyanin };

struct BasisSet {
  FiniteRep rep;
  BasisKind kind;
  std::vector<Mero1> funcs;  // length rep.dim()
};

// phi_{j,l}(z) = th3(z|tau/2)^j th4(z|tau/2)^{n-j} th3(z|eta)^l th4(z|eta)^{m-l}.
BasisSet phi_basis(FiniteRep rep, const ModularParams& mp);

// psi_{j,l}(z): symmetrized products of shifted thetas, th3 appearing j times
// in the eta-shifted factor and l times in the tau/2-shifted factor.
BasisSet psi_basis(FiniteRep rep, const ModularParams& mp);

// The (n+1)-dimensional space of even theta functions of order 2n spanned by
// th3(z|tau/2)^j th4(z|tau/2)^{n-j}: the quantum space of the spin-n/2
// representation.  Same functions as phi_basis(n, 0) under its own tag.
BasisSet sklyanin_basis(int n, const ModularParams& mp);

// The normalization constant c_{nm} of the theta-product form of the
// generating function.
cd c_nm(FiniteRep rep, const ModularParams& mp);

// Expansion constants C'_{jl} in
//   K(z,x) = sum_{j,l} C'_{jl} phi_{jl}(z) psi_{n-j,m-l}(x).
cd kernel_expansion_constant(FiniteRep rep, int j, int l, const ModularParams& mp);

enum class GfPath { gamma_product, theta_product };

// K(z,x) = Gamma(+-z +-x + g) for the representation's spin g, computed
// either as the four-fold elliptic-gamma product or in the closed
// theta-product form.  The two paths agreeing is itself a consistency check.
cd generating_function(FiniteRep rep, cd z, cd x, const ModularParams& mp,
                       GfPath path = GfPath::gamma_product);

struct FitResult {
  CVector coeffs;
  double residual;     // max relative deviation at the validation points
  double condition;    // condition number of the sample matrix
  double max_abs_dev;  // absolute deviation behind `residual`
  double scale;        // max |f| over the sampled points

  // Residual against a caller-supplied scale floor, for images whose natural
  // size is larger than their values (e.g. null vectors of an operator).
  double residual_floored(double floor) const {
    return max_abs_dev / std::max({scale, floor, 1e-300});
  }
};

// Least squares fit of f over 2*dim seeded generic points, validated at dim
// extra points.  Throws FitError when the sample matrix condition number
// exceeds 1e10.
FitResult fit_in_basis(const Mero1& f, const BasisSet& basis, const ModularParams& mp,
                       std::uint64_t seed = 2016);

// Numerical rank of the sample matrix at 2*dim generic points.
int basis_rank(const BasisSet& basis, const ModularParams& mp, std::uint64_t seed = 2016);

struct InterbasisResult {
  CMatrix C;                // psi_j = sum_k C(j,k) phi_k, flat indices
  double max_fit_residual;  // worst membership residual among the psi fits
  double kernel_residual;   // K(z,x) vs its phi/psi double expansion
};

InterbasisResult interbasis_matrix(FiniteRep rep, const ModularParams& mp,
                                   std::uint64_t seed = 2016);

}  // namespace ybe
