#pragma once

#include "ybe/basis.hpp"
#include "ybe/sklyanin.hpp"

// The intertwining operator M(g) of equivalent representations of the
// elliptic modular double: finite-difference form on the spin lattices via
// the A_k/B_k contiguous factorization, integral form on the unit-period
// contour via exponentially convergent trapezoid quadrature, and the
// star-triangle / elliptic beta integral / inversion verification suite.

namespace ybe {

struct QuadratureConfig {
  int points = 64;        // initial trapezoid nodes on [0,1]
  int max_doublings = 3;  // cap: points * 2^max_doublings nodes
  double rel_tol = 1e-9;

  void validate() const {
    if (points < 16) throw DomainError("QuadratureConfig: points must be >= 16");
  }
};

struct DomainCondition {
  std::string name;
  double margin;  // imaginary part that must stay positive
};

struct DomainCheck {
  std::vector<DomainCondition> conditions;

  double min_margin() const;
  // Throws DomainError naming the worst condition when any margin is below
  // the floor.  No integral runs with a negative margin.
  void require(double floor = 0.02) const;
};

// Contiguous-relation building blocks, k = 3 or 4:
//   A_k(g): theta_k(z +- (g + eta) | tau/2) coefficients over theta1(2z|tau),
//           shifts +-eta, constant c_A = e^{pi i eta} / R(tau),
//   B_k(g): quasiperiods swapped, shifts +-tau/2, c_B = e^{pi i tau/2}/R(2eta),
// with their Gaussian factors folded into the coefficients.
DifferenceOperator a_op(int k, cd g, const ModularParams& mp);
DifferenceOperator b_op(int k, cd g, const ModularParams& mp);

enum class LatticePath { tau_first, eta_first };

// M(n eta + m tau/2) as the ordered product of A and B operators times the
// theta_k^{-m}(z|eta) theta_k^{-n}(z|tau/2) multiplier; half=true appends the
// half-period shift e^{(1/2) d}.  The result is independent of k and of the
// lattice path; both choices are exposed so that independence is testable.
DifferenceOperator m_lattice(int n, int m, bool half, const ModularParams& mp, int k = 3,
                             LatticePath path = LatticePath::tau_first);

struct QuadResult {
  cd value = 0.0;
  int nodes = 0;
  double last_rel_diff = 0.0;
  DomainCheck domain;
};

// Periodic trapezoid quadrature of a 1-periodic integrand over [0,1] on
// midpoint-offset nodes, doubling until rel_tol or the doubling cap.
QuadResult periodic_quadrature(const Mero1& integrand, QuadratureConfig quad);

// [M(g) f](z) = kappa int_0^1 Gamma(+-z +-x - g) / Gamma(-2g, +-2x) f(x) dx.
// Requires Im(-g +- z) positive (pole sequences separated from the contour).
QuadResult m_integral(cd g, const Mero1& f, cd z, QuadratureConfig quad,
                      const ModularParams& mp);

// Elliptic beta integral: relative deviation of the quadrature left-hand
// side from the closed-form right-hand side.
double beta_integral_check(cd a, cd b, cd z1, cd z2, cd x, QuadratureConfig quad,
                           const ModularParams& mp, DomainCheck* domain = nullptr);

// Star-triangle operator identity
//   S(alpha) M_z(alpha+beta) S(beta) = M_z(beta) S(alpha+beta) M_z(alpha)
// applied to f at external points; both alpha and beta need negative
// imaginary parts so that the nested contours separate the pole sequences.
// The batch form shares the external-point-independent inner quadrature.
double star_triangle_check(cd alpha, cd beta, cd x, const Mero1& f,
                           const std::vector<cd>& z_ext, QuadratureConfig quad,
                           const ModularParams& mp, DomainCheck* domain = nullptr);
double star_triangle_check(cd alpha, cd beta, cd x, const Mero1& f, cd z_ext,
                           QuadratureConfig quad, const ModularParams& mp,
                           DomainCheck* domain = nullptr);

// Inversion M_lattice(g) M_integral(-g) = 1 on even test functions for
// g = n eta + m tau/2.  The two factors are fused into one combined kernel:
// the lattice shifts move the integral's pole sequences onto the contour
// individually, but their combination stays regular for 0 < |Im z| small.
double inversion_check(int n, int m, const Mero1& f, cd z, QuadratureConfig quad,
                       const ModularParams& mp);

// M_z((n+1) eta + (m+1) tau/2) annihilates the generating function K(z,x);
// returns the scale-normalized application residual at seeded (z, x).
double null_space_check(FiniteRep rep, const ModularParams& mp, std::uint64_t seed);

// Lattice intertwining relations M(g) S^a(g) = S^a(-g) M(g) for both halves,
// g = n eta + m tau/2 (+ 1/2 when half).
double intertwining_check(int n, int m, bool half, bool tilde_half,
                          const ModularParams& mp, std::uint64_t seed);

// A_k(g) M(g) = M(g + eta) theta_k(z|tau/2) and the B_k analogue, on lattice
// points g = n eta + m tau/2.
double contiguous_check(int k, int n, int m, bool b_direction, const ModularParams& mp,
                        std::uint64_t seed);

}  // namespace ybe
