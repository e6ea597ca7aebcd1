#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ybe/diffop.hpp"

// Seeded sample points and the fixed test-function family used by every
// operator-identity check.  Points are drawn from the rectangle
// Re z in [0.05, 0.45], Im z in [-0.1, 0.1] and rejected near the zeros of
// theta1(2z | tau) and theta1(2z | 2 eta), which appear as coefficient
// denominators throughout.

namespace ybe {

class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

  cd rect(double re_lo, double re_hi, double im_lo, double im_hi) {
    std::uniform_real_distribution<double> re(re_lo, re_hi), im(im_lo, im_hi);
    const double x = re(rng_);
    const double y = im(rng_);
    return {x, y};
  }

  cd sample_z(const ModularParams& mp);
  std::vector<cd> sample_zs(const ModularParams& mp, int count);

 private:
  std::mt19937_64 rng_;
};

// Even, entire, 1-periodic test functions: {1, th3(z|tau/2), th4(z|tau/2)^2,
// e^{2 pi i z} + e^{-2 pi i z}, th3(z|eta)}.
std::vector<Mero1> test_functions(const ModularParams& mp);

// Even entire 1-periodic functions of (z1, z2) built as products of the
// one-variable family.
std::vector<Mero2> test_functions2(const ModularParams& mp);

// Relative deviation |a - b| / max(|a|, |b|, floor).
double rel_dev(cd a, cd b, double floor = 1e-300);

// Max residual of (lhs - rhs) applied to the test-function family at seeded
// points, normalized by the pre-cancellation term scales of both sides.
double operator_identity_residual(const DifferenceOperator& lhs, const DifferenceOperator& rhs,
                                  const ModularParams& mp, std::uint64_t seed, int points);

}  // namespace ybe
