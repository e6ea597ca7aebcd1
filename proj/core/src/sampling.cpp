#include "ybe/sampling.hpp"

#include <algorithm>

namespace ybe {

cd PointSampler::sample_z(const ModularParams& mp) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    const cd z = rect(0.05, 0.45, -0.1, 0.1);
    if (std::abs(theta(1, 2.0 * z, mp.tau(), mp.prec())) < 0.05) continue;
    if (std::abs(theta(1, 2.0 * z, 2.0 * mp.eta(), mp.prec())) < 0.05) continue;
    return z;
  }
  throw DomainError("PointSampler: rejection sampling failed to find a point");
}

std::vector<cd> PointSampler::sample_zs(const ModularParams& mp, int count) {
  std::vector<cd> zs(count);
  for (auto& z : zs) z = sample_z(mp);
  return zs;
}

std::vector<Mero1> test_functions(const ModularParams& mp) {
  const cd tau = mp.tau();
  const cd eta = mp.eta();
  const PrecisionConfig prec = mp.prec();
  return {
      [](cd) { return cd(1.0); },
      [tau, prec](cd z) { return theta(3, z, 0.5 * tau, prec); },
      [tau, prec](cd z) {
        const cd t = theta(4, z, 0.5 * tau, prec);
        return t * t;
      },
      [](cd z) { return std::exp(2.0 * kPi * kI * z) + std::exp(-2.0 * kPi * kI * z); },
      [eta, prec](cd z) { return theta(3, z, eta, prec); },
  };
}

std::vector<Mero2> test_functions2(const ModularParams& mp) {
  const auto f = test_functions(mp);
  std::vector<Mero2> out;
  const int picks[][2] = {{1, 4}, {2, 1}, {3, 2}};
  for (auto& pk : picks) {
    Mero1 a = f[pk[0]], b = f[pk[1]];
    out.push_back([a, b](cd z1, cd z2) { return a(z1) * b(z2); });
  }
  return out;
}

double rel_dev(cd a, cd b, double floor) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) / scale;
}

double operator_identity_residual(const DifferenceOperator& lhs, const DifferenceOperator& rhs,
                                  const ModularParams& mp, std::uint64_t seed, int points) {
  PointSampler sampler(seed);
  const auto fns = test_functions(mp);
  const auto zs = sampler.sample_zs(mp, points);
  double worst = 0.0;
  for (const auto& f : fns) {
    for (const cd z : zs) {
      double sl = 0.0, sr = 0.0;
      const cd a = lhs.apply(f, z, &sl);
      const cd b = rhs.apply(f, z, &sr);
      worst = std::max(worst, std::abs(a - b) / std::max({sl, sr, 1e-300}));
    }
  }
  return worst;
}

}  // namespace ybe
