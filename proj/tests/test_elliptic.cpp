#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ybe/elliptic.hpp"
#include "ybe/sampling.hpp"

using namespace ybe;

namespace {
const ModularParams mp({0.20, 1.00}, {0.35, 0.40});
const cd tau = mp.tau();
const cd eta = mp.eta();

// Oversampled series oracle: same Fourier series summed with a 4x smaller
// truncation threshold and a generous term cap.
cd theta_oracle(int a, cd z, cd modulus) {
  return theta(a, z, modulus, PrecisionConfig{2.5e-17, 2048});
}
}  // namespace

TEST_CASE("theta1 basics") {
  CHECK(std::abs(theta1(0.0, tau)) == 0.0);

  const cd z{0.13, 0.07};
  CHECK(rel_dev(theta1(z + 1.0, tau), -theta1(z, tau)) < 1e-14);
  CHECK(rel_dev(theta1(-z, tau), -theta1(z, tau)) < 1e-14);
  CHECK(rel_dev(theta1(z + tau, tau),
                -std::exp(-2.0 * kPi * kI * z - kPi * kI * tau) * theta1(z, tau)) < 1e-13);

  // Independent oversampled oracle.
  const cd w{0.3, 0.2};
  CHECK(rel_dev(theta1(w, cd(0.2, 1.0)), theta_oracle(1, w, cd(0.2, 1.0))) < 1e-13);
}

TEST_CASE("theta shift definitions") {
  const cd z{0.21, -0.06};
  CHECK(rel_dev(theta(2, z, tau), theta1(z + 0.5, tau)) < 1e-14);
  CHECK(rel_dev(theta(3, z, tau),
                std::exp(kPi * kI * tau / 4.0 + kPi * kI * z) * theta(2, z + 0.5 * tau, tau)) <
        1e-14);
  CHECK(rel_dev(theta(4, z, tau), theta(3, z + 0.5, tau)) < 1e-14);
  CHECK(rel_dev(theta(2, 0.0, tau), theta1(0.5, tau)) < 1e-14);
}

TEST_CASE("theta cross-representation oracle") {
  // theta3 via the multiplicative route theta1 = e^{-pi i z} theta(.;p)/R.
  const cd z{0.4, 0.0};
  auto theta1_mult = [&](cd w) {
    return std::exp(-kPi * kI * w) * theta_mult(std::exp(2.0 * kPi * kI * w), mp.p()) /
           mp.r_tau();
  };
  const cd oracle =
      std::exp(kPi * kI * tau / 4.0 + kPi * kI * z) * theta1_mult(z + 0.5 + 0.5 * tau);
  CHECK(rel_dev(theta(3, z, tau), oracle) < 1e-12);
}

TEST_CASE("theta bilinear identities at random pairs") {
  PointSampler s(2024);
  for (int i = 0; i < 100; ++i) {
    const cd x = s.rect(-0.4, 0.4, -0.2, 0.2), y = s.rect(-0.4, 0.4, -0.2, 0.2);
    auto t = [&](int a, cd w) { return theta(a, w, tau); };
    auto b = [&](int a, cd w) { return theta(a, w, 0.5 * tau); };
    CHECK(rel_dev(2.0 * t(1, x + y) * t(1, x - y), b(4, x) * b(3, y) - b(4, y) * b(3, x),
                  1e-3) < 1e-10);
    CHECK(rel_dev(2.0 * t(2, x + y) * t(2, x - y), b(3, x) * b(3, y) - b(4, y) * b(4, x),
                  1e-3) < 1e-10);
    CHECK(rel_dev(2.0 * t(3, x + y) * t(3, x - y), b(3, x) * b(3, y) + b(4, y) * b(4, x),
                  1e-3) < 1e-10);
    CHECK(rel_dev(2.0 * t(4, x + y) * t(4, x - y), b(4, x) * b(3, y) + b(4, y) * b(3, x),
                  1e-3) < 1e-10);
  }
}

TEST_CASE("theta series cap reports achieved error") {
  CHECK_THROWS_AS(theta(1, cd(0.1, 9.0), cd(0.0, 0.05), PrecisionConfig{1e-13, 16}),
                  PrecisionError);
}

TEST_CASE("qpochhammer and multiplicative theta") {
  CHECK(std::abs(qpochhammer(0.0, mp.p()) - 1.0) == 0.0);
  // (pt^{-1};p)_inf leg contains the factor (1 - 1) at t = p.
  CHECK(std::abs(theta_mult(mp.p(), mp.p())) < 1e-15);
  CHECK_THROWS_AS(qpochhammer(0.5, cd(1.1, 0.0)), DomainError);

  // theta1 bridge at 20 random points.
  PointSampler s(7);
  for (int i = 0; i < 20; ++i) {
    const cd z = s.rect(-0.4, 0.4, -0.2, 0.2);
    const cd lhs = theta1(z, tau);
    const cd rhs = std::exp(-kPi * kI * z) * theta_mult(std::exp(2.0 * kPi * kI * z), mp.p()) /
                   mp.r_tau();
    CHECK(rel_dev(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("elliptic gamma") {
  const cd z{0.13, 0.07};
  // Fixed point of the reflection.
  CHECK(std::abs(elliptic_gamma(eta + 0.5 * tau, mp) - 1.0) < 1e-14);

  PointSampler s(11);
  for (int i = 0; i < 20; ++i) {
    const cd w = s.rect(0.02, 0.48, -0.15, 0.15);
    CHECK(std::abs(elliptic_gamma(w, mp) *
                       elliptic_gamma(-w + 2.0 * eta + tau, mp) -
                   1.0) < 1e-11);
    const cd g = elliptic_gamma(w, mp);
    CHECK(rel_dev(elliptic_gamma(w + 2.0 * eta, mp),
                  mp.r_tau() * std::exp(kI * kPi * w) * theta1(w, tau) * g) < 1e-11);
    CHECK(rel_dev(elliptic_gamma(w + tau, mp),
                  mp.r_2eta() * std::exp(kI * kPi * w) * theta1(w, 2.0 * eta) * g) < 1e-11);
  }

  // Quasiperiod symmetry Gamma(z|tau,2eta) = Gamma(z|2eta,tau).
  CHECK(rel_dev(elliptic_gamma(z, mp), elliptic_gamma(z, mp.swapped())) < 1e-13);

  // Pole proximity is an explicit error.
  CHECK_THROWS_AS(elliptic_gamma(cd(0.0, 0.0), mp), PoleError);
  CHECK_THROWS_AS(elliptic_gamma(1e-14 * cd(1.0, 1.0), mp), PoleError);
}

TEST_CASE("gamma ratio as finite theta product") {
  PointSampler s(13);
  for (int i = 0; i < 5; ++i) {
    const cd v = s.rect(0.05, 0.45, -0.1, 0.1);
    for (auto [n2, nt] : {std::pair{1, 0}, {0, 1}, {2, 1}, {1, 2}}) {
      const cd direct = elliptic_gamma(v + 2.0 * double(n2) * eta + double(nt) * tau, mp) /
                        elliptic_gamma(v, mp);
      CHECK(rel_dev(gamma_ratio_theta(v, n2, nt, mp), direct) < 1e-12);
    }
  }
}

TEST_CASE("modular params invariants") {
  CHECK_THROWS_AS(ModularParams({0.2, -1.0}, {0.35, 0.40}), DomainError);
  CHECK_THROWS_AS(ModularParams({0.2, 1.0}, {0.35, 0.0}), DomainError);
  // Stored nomes agree with recomputation.
  CHECK(rel_dev(mp.p(), std::exp(2.0 * kPi * kI * tau)) < 1e-15);
  CHECK(rel_dev(mp.q(), std::exp(4.0 * kPi * kI * eta)) < 1e-15);
  CHECK(std::abs(mp.p()) < 1.0);
  CHECK(std::abs(mp.q()) < 1.0);
}
