#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Jacobi theta functions, q-Pochhammer products and the elliptic gamma
// function, evaluated with certified truncation.  All series and products
// here converge geometrically for |p|, |q| < 1; truncation is controlled by
// PrecisionConfig and failures are reported as exceptions, never as silent
// loss of accuracy.

namespace ybe {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

// Raised when a series or product hits its term cap before the truncation
// target; carries the achieved relative error estimate.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error(achieved) {}
  double achieved_error;
};

// Raised when an evaluation lands within the pole threshold of a pole.
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a parameter violates a documented domain condition.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrecisionConfig {
  double eps = 1e-13;   // relative truncation target
  int max_terms = 512;  // series/product term cap

  void validate() const {
    if (eps < 1e-16) throw DomainError("PrecisionConfig: eps below machine epsilon");
    if (max_terms < 8) throw DomainError("PrecisionConfig: max_terms < 8");
  }
};

// Pole proximity threshold for the elliptic gamma function, in factor
// magnitude |1 - e^{2 pi i z} p^n q^m|.
inline constexpr double kPoleEps = 1e-12;

// The global parameter context: quasiperiods tau, eta with Im > 0 and the
// derived nomes p = e^{2 pi i tau}, q = e^{4 pi i eta}.  Power tables for p
// and q and the constants R(tau), R(2 eta), kappa are precomputed once and
// shared by every evaluation.  Immutable after construction.
class ModularParams {
 public:
  ModularParams(cd tau, cd eta, PrecisionConfig prec = {});

  cd tau() const { return tau_; }
  cd eta() const { return eta_; }
  cd p() const { return p_; }
  cd q() const { return q_; }
  const PrecisionConfig& prec() const { return prec_; }

  cd r_tau() const { return r_tau_; }    // R(tau)  = p^{-1/8} / (i (p;p)_inf)
  cd r_2eta() const { return r_2eta_; }  // R(2eta) = q^{-1/8} / (i (q;q)_inf)
  cd kappa() const { return kappa_; }    // (1/2) (q;q)_inf (p;p)_inf

  cd p_pow(int n) const { return p_powers_.at(n); }
  cd q_pow(int m) const { return q_powers_.at(m); }
  int max_pow() const { return static_cast<int>(p_powers_.size()) - 1; }

  // Same parameters with the quasiperiods 2eta and tau interchanged,
  // i.e. tau' = 2 eta, eta' = tau / 2 (so p' = q and q' = p).
  ModularParams swapped() const { return ModularParams(2.0 * eta_, 0.5 * tau_, prec_); }

 private:
  cd tau_, eta_, p_, q_;
  PrecisionConfig prec_;
  cd r_tau_, r_2eta_, kappa_;
  std::vector<cd> p_powers_, q_powers_;
};

// theta_a(z | tau), a = 1..4, by the rapidly convergent Fourier series.
// theta1 is odd; theta2 = theta1(z + 1/2); theta3, theta4 follow by the
// usual quasiperiod half shifts.
cd theta(int a, cd z, cd tau, const PrecisionConfig& prec = {});
cd theta1(cd z, cd tau, const PrecisionConfig& prec = {});

// (t; p)_inf = prod_{k >= 0} (1 - t p^k), |p| < 1.
cd qpochhammer(cd t, cd p, const PrecisionConfig& prec = {});

// theta(t; p) = (t; p)_inf (p t^{-1}; p)_inf.
cd theta_mult(cd t, cd p, const PrecisionConfig& prec = {});

// R(tau) = p^{-1/8} / (i (p;p)_inf) with the branch p^{-1/8} = e^{-pi i tau/4}.
cd r_const(cd tau, const PrecisionConfig& prec = {});

// The elliptic gamma function
//   Gamma(z | tau, 2 eta) = prod_{n,m >= 0} (1 - e^{-2 pi i z} p^{n+1} q^{m+1})
//                                          / (1 - e^{2 pi i z} p^n q^m),
// truncated over anti-diagonals n + m <= N with a geometric tail bound.
// Throws PoleError when a retained denominator factor is within kPoleEps.
cd elliptic_gamma(cd z, const ModularParams& mp);
cd elliptic_gamma_pq(cd z, cd p, cd q, const PrecisionConfig& prec);

// 1 / Gamma(z) via the reflection identity Gamma(z) Gamma(-z + 2eta + tau) = 1.
cd elliptic_gamma_inv(cd z, const ModularParams& mp);

// Gamma(v + n2 * 2eta + nt * tau) / Gamma(v) as a finite product of theta
// factors through the shift equations; n2, nt >= 0.  This avoids forming the
// two gamma values (which may sit near poles) explicitly.
cd gamma_ratio_theta(cd v, int n2, int nt, const ModularParams& mp);

// Gamma(z + x + c) Gamma(z - x + c) Gamma(-z + x + c) Gamma(-z - x + c).
cd gamma_pm(cd z, cd x, cd c, const ModularParams& mp);
// Gamma(w + c) Gamma(-w + c).
cd gamma_pm1(cd w, cd c, const ModularParams& mp);

}  // namespace ybe
