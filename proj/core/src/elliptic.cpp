#include "ybe/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace ybe {

namespace {

// Max anti-diagonal for the gamma double product: (d+1)(d+2)/2 factors must
// stay under max_terms.
int max_diagonal(int max_terms) {
  int d = 0;
  while ((d + 2) * (d + 3) / 2 <= max_terms) ++d;
  return d;
}

}  // namespace

ModularParams::ModularParams(cd tau, cd eta, PrecisionConfig prec)
    : tau_(tau), eta_(eta), prec_(prec) {
  prec_.validate();
  if (tau.imag() <= 0.0) throw DomainError("ModularParams: Im(tau) must be positive");
  if (eta.imag() <= 0.0) throw DomainError("ModularParams: Im(eta) must be positive");
  p_ = std::exp(2.0 * kPi * kI * tau_);
  q_ = std::exp(4.0 * kPi * kI * eta_);
  const int cap = 2 * max_diagonal(prec_.max_terms) + 4;
  p_powers_.resize(cap + 1);
  q_powers_.resize(cap + 1);
  p_powers_[0] = q_powers_[0] = 1.0;
  for (int k = 1; k <= cap; ++k) {
    p_powers_[k] = p_powers_[k - 1] * p_;
    q_powers_[k] = q_powers_[k - 1] * q_;
  }
  r_tau_ = r_const(tau_, prec_);
  r_2eta_ = r_const(2.0 * eta_, prec_);
  kappa_ = 0.5 * qpochhammer(q_, q_, prec_) * qpochhammer(p_, p_, prec_);
}

cd theta(int a, cd z, cd tau, const PrecisionConfig& prec) {
  if (tau.imag() <= 0.0) throw DomainError("theta: Im(tau) must be positive");
  if (a < 1 || a > 4) throw DomainError("theta: index must be in 1..4");

  // Index where the Gaussian decay certainly dominates the |Im z| growth.
  const int n_min = static_cast<int>(std::ceil(std::abs(z.imag()) / tau.imag())) + 1;

  cd sum = 0.0;
  double max_term = 0.0;
  for (int n = 0; n < prec.max_terms; ++n) {
    cd term;
    switch (a) {
      case 1:
        term = 2.0 * ((n % 2) ? -1.0 : 1.0) *
               std::exp(kI * kPi * tau * ((n + 0.5) * (n + 0.5))) *
               std::sin((2.0 * n + 1.0) * kPi * z);
        break;
      case 2:
        term = 2.0 * std::exp(kI * kPi * tau * ((n + 0.5) * (n + 0.5))) *
               std::cos((2.0 * n + 1.0) * kPi * z);
        break;
      case 3:
        term = (n == 0) ? cd(1.0)
                        : 2.0 * std::exp(kI * kPi * tau * (double(n) * n)) *
                              std::cos(2.0 * n * kPi * z);
        break;
      default:
        term = (n == 0) ? cd(1.0)
                        : 2.0 * ((n % 2) ? -1.0 : 1.0) *
                              std::exp(kI * kPi * tau * (double(n) * n)) *
                              std::cos(2.0 * n * kPi * z);
        break;
    }
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (n >= n_min && std::abs(term) <= prec.eps * std::max(std::abs(sum), max_term)) {
      return sum;
    }
  }
  throw PrecisionError("theta: series cap reached before convergence",
                       max_term > 0.0 ? std::abs(sum) / max_term : 0.0);
}

cd theta1(cd z, cd tau, const PrecisionConfig& prec) { return theta(1, z, tau, prec); }

cd qpochhammer(cd t, cd p, const PrecisionConfig& prec) {
  if (std::abs(p) >= 1.0) throw DomainError("qpochhammer: |p| must be < 1");
  cd prod = 1.0;
  cd tpk = t;
  for (int k = 0; k < prec.max_terms; ++k) {
    prod *= (1.0 - tpk);
    tpk *= p;
    // Remaining factors differ from 1 by at most |t p^k| / (1 - |p|).
    if (std::abs(tpk) / (1.0 - std::abs(p)) < prec.eps) return prod;
  }
  throw PrecisionError("qpochhammer: product cap reached", std::abs(tpk));
}

cd theta_mult(cd t, cd p, const PrecisionConfig& prec) {
  if (std::abs(t) == 0.0) throw DomainError("theta_mult: t must be nonzero");
  return qpochhammer(t, p, prec) * qpochhammer(p / t, p, prec);
}

cd r_const(cd tau, const PrecisionConfig& prec) {
  const cd p = std::exp(2.0 * kPi * kI * tau);
  return std::exp(-kPi * kI * tau / 4.0) / (kI * qpochhammer(p, p, prec));
}

cd elliptic_gamma_pq(cd z, cd p, cd q, const PrecisionConfig& prec) {
  if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0)
    throw DomainError("elliptic_gamma: |p| and |q| must be < 1");
  const cd x = std::exp(2.0 * kPi * kI * z);
  const cd y = p * q / x;  // e^{-2 pi i z} p q
  const double r = std::max(std::abs(p), std::abs(q));
  const double weight = std::abs(x) + std::abs(y);
  const int d_cap = max_diagonal(prec.max_terms);

  cd num = 1.0, den = 1.0;
  std::vector<cd> ppow(d_cap + 1), qpow(d_cap + 1);
  ppow[0] = qpow[0] = 1.0;
  for (int k = 1; k <= d_cap; ++k) {
    ppow[k] = ppow[k - 1] * p;
    qpow[k] = qpow[k - 1] * q;
  }

  double rpow = 1.0;  // r^{d+1} running
  for (int d = 0; d <= d_cap; ++d) {
    for (int n = 0; n <= d; ++n) {
      const int m = d - n;
      const cd pq = ppow[n] * qpow[m];
      const cd fden = 1.0 - x * pq;
      if (std::abs(fden) < kPoleEps)
        throw PoleError("elliptic_gamma: evaluation within pole threshold");
      num *= (1.0 - y * pq);
      den *= fden;
    }
    rpow *= r;
    const double tail = weight * (d + 2) * rpow / ((1.0 - r) * (1.0 - r));
    if (tail < 0.5 * prec.eps) return num / den;
  }
  throw PrecisionError("elliptic_gamma: diagonal cap reached",
                       weight * rpow / ((1.0 - r) * (1.0 - r)));
}

cd elliptic_gamma(cd z, const ModularParams& mp) {
  return elliptic_gamma_pq(z, mp.p(), mp.q(), mp.prec());
}

cd elliptic_gamma_inv(cd z, const ModularParams& mp) {
  return elliptic_gamma(-z + 2.0 * mp.eta() + mp.tau(), mp);
}

cd gamma_ratio_theta(cd v, int n2, int nt, const ModularParams& mp) {
  if (n2 < 0 || nt < 0) throw DomainError("gamma_ratio_theta: negative step count");
  cd prod = 1.0;
  for (int j = 0; j < nt; ++j) {
    const cd w = v + double(j) * mp.tau();
    prod *= mp.r_2eta() * std::exp(kI * kPi * w) * theta(1, w, 2.0 * mp.eta(), mp.prec());
  }
  for (int k = 0; k < n2; ++k) {
    const cd w = v + double(nt) * mp.tau() + 2.0 * double(k) * mp.eta();
    prod *= mp.r_tau() * std::exp(kI * kPi * w) * theta(1, w, mp.tau(), mp.prec());
  }
  return prod;
}

cd gamma_pm1(cd w, cd c, const ModularParams& mp) {
  return elliptic_gamma(w + c, mp) * elliptic_gamma(-w + c, mp);
}

cd gamma_pm(cd z, cd x, cd c, const ModularParams& mp) {
  return elliptic_gamma(z + x + c, mp) * elliptic_gamma(z - x + c, mp) *
         elliptic_gamma(-z + x + c, mp) * elliptic_gamma(-z - x + c, mp);
}

}  // namespace ybe
