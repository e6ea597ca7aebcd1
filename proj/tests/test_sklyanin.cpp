#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ybe/lax.hpp"

using namespace ybe;

namespace {
const ModularParams mp({0.20, 1.00}, {0.35, 0.40});
const cd t2e = theta(1, 2.0 * mp.eta(), mp.tau(), mp.prec());
}

TEST_CASE("structure constants") {
  for (const auto& j : {StructureConstants::plain(mp), StructureConstants::tilded(mp)}) {
    CHECK(j.constraint_residual() < 1e-12);
    CHECK(j.ratio_residual() < 1e-12);
  }
}

TEST_CASE("spin conversion round-trips") {
  const cd ell{0.31, 0.12};
  const auto spin = SpinParams::from_ell(ell, mp);
  CHECK(rel_dev(SpinParams::from_g(spin.g, mp).ell, ell) < 1e-15);
}

TEST_CASE("l = 1/2 action on the theta-bar pair") {
  const auto S = generators_S(SpinParams::from_ell(0.5, mp), false, mp);
  const cd z{0.23, 0.04};
  auto b = [&](int a) { return theta(a, z, 0.5 * mp.tau(), mp.prec()); };
  Mero1 e1 = [&](cd w) { return theta(4, w, 0.5 * mp.tau(), mp.prec()); };
  Mero1 e2 = [&](cd w) { return theta(3, w, 0.5 * mp.tau(), mp.prec()); };

  CHECK(rel_dev(S[0].apply(e2, z), b(3) * t2e) < 1e-13);
  CHECK(rel_dev(S[0].apply(e1, z), b(4) * t2e) < 1e-13);
  CHECK(rel_dev(S[1].apply(e2, z), b(4) * t2e) < 1e-13);
  CHECK(rel_dev(S[1].apply(e1, z), b(3) * t2e) < 1e-13);
  CHECK(rel_dev(S[2].apply(e2, z), -kI * b(4) * t2e) < 1e-13);
  CHECK(rel_dev(S[2].apply(e1, z), kI * b(3) * t2e) < 1e-13);
  CHECK(rel_dev(S[3].apply(e2, z), -b(3) * t2e) < 1e-13);
  CHECK(rel_dev(S[3].apply(e1, z), b(4) * t2e) < 1e-13);
}

TEST_CASE("commutation relations as operator identities") {
  const auto J = StructureConstants::plain(mp);
  const auto Jt = StructureConstants::tilded(mp);

  // Generic spin, plain realization.
  CHECK(relations_residual(generators_S(SpinParams::from_ell({0.31, 0.12}, mp), false, mp), J,
                           mp, 61, 20) < 1e-9);
  // Modified (Gaussian-conjugated) generators at generic g and a lattice g.
  const cd g{0.27, 0.33};
  CHECK(relations_residual(generators_S(SpinParams::from_g(g, mp), true, mp), J, mp, 62, 20) <
        1e-9);
  CHECK(relations_residual(
            generators_S(SpinParams::from_g(FiniteRep{1, 1, false}.g(mp), mp), true, mp), J,
            mp, 63, 12) < 1e-9);
  // Tilded half.
  CHECK(relations_residual(generators_S_tilde(g, mp), Jt, mp, 64, 20) < 1e-9);
  // Cross commutation, including the S^0 S~^1 + S~^1 S^0 = 0 pair.
  CHECK(cross_relations_residual(generators_S(SpinParams::from_g(g, mp), true, mp),
                                 generators_S_tilde(g, mp), mp, 65, 12) < 1e-9);
}

TEST_CASE("modified generators vs explicit sandwich") {
  const cd g{0.27, 0.33};
  const auto mod = generators_S(SpinParams::from_g(g, mp), true, mp);
  const auto plain = generators_S(SpinParams::from_g(g, mp), false, mp);
  const auto fns = test_functions(mp);
  PointSampler s(66);
  for (int a = 0; a < 4; ++a) {
    for (int i = 0; i < 6; ++i) {
      const cd z = s.sample_z(mp);
      Mero1 damped = [&](cd w) {
        return std::exp(-kPi * kI * w * w / mp.eta()) * fns[1](w);
      };
      const cd sandwich =
          std::exp(kPi * kI * z * z / mp.eta()) * plain[a].apply(damped, z);
      CHECK(rel_dev(mod[a].apply(fns[1], z), sandwich) < 1e-10);
    }
  }
}

TEST_CASE("tilded generators are the swapped plain ones") {
  const cd g{0.27, 0.33};
  const ModularParams sw = mp.swapped();
  const auto tilded = generators_S_tilde(g, mp);
  const auto swapped = generators_S(SpinParams::from_g(g, sw), true, sw);
  const auto fns = test_functions(mp);
  PointSampler s(67);
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 5; ++i) {
      const cd z = s.sample_z(mp);
      double s1 = 0.0, s2 = 0.0;
      const cd v1 = tilded[a].apply(fns[1], z, &s1);
      const cd v2 = swapped[a].apply(fns[1], z, &s2);
      CHECK(std::abs(v1 - v2) / std::max({s1, s2}) < 1e-13);
    }
}

TEST_CASE("casimir operators") {
  const cd g{0.27, 0.33};
  const auto rep = casimir_check(SpinParams::from_g(g, mp), true, false, mp, 68);
  CHECK(rep.k0_residual < 1e-9);
  CHECK(rep.k2_residual < 1e-9);
  CHECK(rep.commutant_residual < 1e-9);
  CHECK(rel_dev(rep.k0_expected,
                4.0 * theta(1, g, mp.tau(), mp.prec()) * theta(1, g, mp.tau(), mp.prec())) <
        1e-14);

  const auto rept = casimir_check(SpinParams::from_g(g, mp), true, true, mp, 69);
  CHECK(rept.k0_residual < 1e-9);
  CHECK(rel_dev(rept.k0_expected, 4.0 * theta(1, g, 2.0 * mp.eta(), mp.prec()) *
                                      theta(1, g, 2.0 * mp.eta(), mp.prec())) < 1e-10);

  // Scalars are invariant under g -> -g.
  const auto repm = casimir_check(SpinParams::from_g(-g, mp), true, false, mp, 70);
  CHECK(rel_dev(rep.k0_expected, repm.k0_expected) < 1e-14);
  CHECK(rel_dev(rep.k2_expected, repm.k2_expected) < 1e-14);
}

TEST_CASE("matrix representations") {
  // Theta_2^+: the Pauli reduction.
  const auto S = generators_S(SpinParams::from_ell(0.5, mp), false, mp);
  double fit = 0.0;
  const auto mats = matrix_rep(S, sklyanin_basis(1, mp), mp, 71, &fit);
  CHECK(fit < 1e-12);
  CMatrix sig[4] = {pauli(0), pauli(1), pauli(2), pauli(3)};
  for (int a = 0; a < 4; ++a)
    CHECK((mats[a] - t2e * sig[a]).cwiseAbs().maxCoeff() / std::abs(t2e) < 1e-10);

  // Theta_4^+: 3x3 matrices satisfying the relations.
  const auto S1 = generators_S(SpinParams::from_ell(1.0, mp), false, mp);
  double fit2 = 0.0;
  const auto mats2 = matrix_rep(S1, sklyanin_basis(2, mp), mp, 72, &fit2);
  CHECK(fit2 < 1e-12);
  CHECK(matrix_relations_residual(mats2, StructureConstants::plain(mp)) < 1e-10);

  // Both halves preserve the phi span of a modular-double rep; a generator at
  // an off-lattice spin does not.
  const FiniteRep rep{1, 1, false};
  double fit3 = 0.0, fit4 = 0.0;
  matrix_rep(generators_S(SpinParams::from_g(rep.g(mp), mp), true, mp), phi_basis(rep, mp),
             mp, 73, &fit3);
  matrix_rep(generators_S_tilde(rep.g(mp), mp), phi_basis(rep, mp), mp, 74, &fit4);
  CHECK(fit3 < 1e-8);
  CHECK(fit4 < 1e-8);
  CHECK_THROWS_AS(matrix_rep(generators_S(SpinParams::from_g(cd(0.21, 0.11), mp), true, mp),
                             phi_basis(rep, mp), mp, 75),
                  FitError);
}
