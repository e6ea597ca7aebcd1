#pragma once

#include "ybe/intertwiner.hpp"
#include "ybe/lax.hpp"

// Fusion: symbol calculus with auxiliary spinors, fusion of n Baxter
// R-matrices into the spin-n/2 Lax operator, and fusion of modular-double
// Lax operators into the higher-spin R-operator acting on a finite
// representation in the first space.

namespace ybe {

struct Spinor {
  cd c1, c2;

  // lambda(a) = (th4(a|mod), th3(a|mod)); mu(b) = (th3(b|mod), th4(b|mod)).
  static Spinor lambda_of(cd a, cd modulus, const PrecisionConfig& prec);
  static Spinor mu_of(cd b, cd modulus, const PrecisionConfig& prec);
};

// <lambda(z) | R(u) | mu> with lambda = (th4(z|tau/2), th3(z|tau/2)): a 2x2
// matrix in the second auxiliary space.  The product of n such symbols at
// staggered spectral points is the symbol of the fused operator.
CMatrix baxter_symbol(cd u, cd z, Spinor mu, const ModularParams& mp);

// The same value through the three-matrix factorized route (lateral theta
// matrices around a diagonal shift acting on <lambda(z1)|mu> at z1 = z).
CMatrix baxter_symbol_factorized(cd u, cd z, Spinor mu, const ModularParams& mp);

// The lateral-matrix cancellation 2 theta1(2z) theta1(u) * Id.
double lateral_cancellation_residual(cd u, cd z, const ModularParams& mp);

struct FusedBaxter {
  cd u;
  int n;
  cd r_n;                         // 2^{n-1} theta1(u)...theta1(u-2(n-1)eta) theta1(2eta)^{-n}
  std::array<CMatrix, 4> gens;    // fused quantum-space generator matrices, (n+1)^2
  double closed_form_residual;    // product of symbols vs r_n L(u/2+eta, u/2-n eta)
  double extraction_residual;     // basis-fit quality of the extraction
};

// Fuses n Baxter R-matrices: forms the product of symbols, checks it against
// the closed form, and reconstructs the spin-n/2 quantum-space generators by
// mu-interpolation and fitting in the Theta^+_{2n} basis.
FusedBaxter fuse_baxter(cd u, int n, const ModularParams& mp, std::uint64_t seed);

enum class LambdaForm { generator, theta, gamma_factorized };

// The twisted Lax symbol Lambda(u) = lambda_i (L^doub sigma3)_i^j mu_j as a
// two-term difference operator in z, in its three finite-difference forms.
// tilde=true builds the second-half symbol (quasiperiods swapped).
DifferenceOperator lambda_symbol(cd u, cd g, cd a, cd b, LambdaForm form, bool tilde,
                                 const ModularParams& mp);

// The star-triangle rearranged form of the symbol evaluated at the spectral
// point u with u2 = (u-g)/2 = -2 eta - tau/2, where its outer M becomes the
// integral M(-eta) and its inner M the lattice M(2 eta); compared against the
// exact gamma_factorized form.  Exercises the star-triangle identity through
// a genuine quadrature.
double lambda_star_triangle_residual(cd g, cd a, cd b, const Mero1& f, cd z,
                                     QuadratureConfig quad, const ModularParams& mp);

// Fused modular-double operator acting on the generating function of the
// (n,m) representation: multiplication by elliptic-gamma products around the
// lattice operator M_z(n eta + m tau/2), per the fused-symbol closed form.
class FusedDouble {
 public:
  FusedDouble(cd u, cd g2, int n, int m, const ModularParams& mp);

  // [R_fus Gamma(+-a +-x + g_nm) Phi](z) for the test function Phi of z.
  cd apply_kernel(cd a, cd x, const Mero1& phi, cd z, double* scale = nullptr) const;

  // The lattice operator's shift terms (shared with the reduction pipeline).
  const DifferenceOperator& lattice() const { return lattice_; }
  cd u() const { return u_; }
  cd g2() const { return g2_; }
  FiniteRep rep() const { return rep_; }

  // Coefficient of the shift term t in the composite kernel at (a, z, x).
  cd term_coefficient(std::size_t t, cd a, cd z, cd x) const;
  cd normalization() const { return eps_nm_; }

 private:
  const ModularParams& mp_;
  cd u_, g2_;
  FiniteRep rep_;
  DifferenceOperator lattice_;
  cd eps_nm_;
};

// Normalization constants of the fused symbol calculus.
cd gamma_nm_constant(int n, int m, cd u, const ModularParams& mp);
cd eps_nm_constant(int n, int m, cd u, const ModularParams& mp);

}  // namespace ybe
