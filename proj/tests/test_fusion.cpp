#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ybe/fusion.hpp"

using namespace ybe;

namespace {
const ModularParams mp({0.20, 1.00}, {0.35, 0.40});
const QuadratureConfig quad{64, 3, 1e-9};
}

TEST_CASE("baxter symbol forms agree") {
  PointSampler s(140);
  for (int i = 0; i < 10; ++i) {
    const cd u = s.rect(-0.4, 0.4, -0.2, 0.2);
    const cd z = s.sample_z(mp);
    const Spinor mu{s.rect(-1.0, 1.0, -1.0, 1.0), s.rect(-1.0, 1.0, -1.0, 1.0)};
    const CMatrix a = baxter_symbol(u, z, mu, mp);
    const CMatrix b = baxter_symbol_factorized(u, z, mu, mp);
    CHECK((a - b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("symbol is the contracted R-matrix") {
  // Definition unwinding at l = 1/2: lambda_i R_i^j mu_j from the 4x4 matrix.
  const cd u{0.31, 0.17}, z{0.22, 0.04};
  const Spinor mu{cd(0.7, 0.2), cd(-0.4, 0.55)};
  const CMatrix r = baxter_r(u, false, mp);
  const cd lam[2] = {theta(4, z, 0.5 * mp.tau(), mp.prec()),
                     theta(3, z, 0.5 * mp.tau(), mp.prec())};
  const cd muv[2] = {mu.c1, mu.c2};
  CMatrix direct = CMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) direct(k, l) += lam[i] * r(2 * i + k, 2 * j + l) * muv[j];
  const CMatrix sym = baxter_symbol(u, z, mu, mp);
  CHECK((sym - direct).cwiseAbs().maxCoeff() / sym.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("lateral cancellation") {
  PointSampler s(141);
  for (int i = 0; i < 10; ++i)
    CHECK(lateral_cancellation_residual(s.rect(-0.4, 0.4, -0.2, 0.2), s.sample_z(mp), mp) <
          1e-12);
}

TEST_CASE("fusion of baxter R-matrices") {
  const cd u{0.31, 0.17};
  const cd t2e = theta(1, 2.0 * mp.eta(), mp.tau(), mp.prec());
  for (int n = 1; n <= 4; ++n) {
    const auto fb = fuse_baxter(u, n, mp, 142 + n);
    CHECK(fb.closed_form_residual < 1e-9);
    CHECK(fb.extraction_residual < 1e-10);
    if (n == 1) {
      // Base case: r_1 = 1/theta1(2 eta) and the reconstructed generators are
      // r_1 theta1(2 eta) sigma^a = sigma^a.
      CHECK(rel_dev(fb.r_n, 1.0 / t2e) < 1e-13);
      for (int a = 0; a < 4; ++a)
        CHECK((fb.gens[a] - pauli(a)).cwiseAbs().maxCoeff() < 1e-12);
    }
    if (n == 2 || n == 3) {
      CHECK(matrix_relations_residual(fb.gens, StructureConstants::plain(mp)) < 1e-9);
      // Match with the direct matrix representation up to one global scalar.
      double fit = 0.0;
      const auto ref = matrix_rep(generators_S(SpinParams::from_ell(0.5 * n, mp), false, mp),
                                  phi_basis(FiniteRep{n, 0, false}, mp), mp, 146 + n, &fit);
      const cd scal = fb.gens[0](0, 0) / ref[0](0, 0);
      for (int a = 0; a < 4; ++a)
        CHECK((fb.gens[a] - scal * ref[a]).cwiseAbs().maxCoeff() /
                  (std::abs(scal) * ref[a].cwiseAbs().maxCoeff()) <
              1e-8);
    }
  }
}

TEST_CASE("symbol homogeneity under spinor scaling") {
  PointSampler s(150);
  const cd u{0.31, 0.17};
  const cd z = s.sample_z(mp);
  const Spinor mu{cd(0.7, 0.2), cd(-0.4, 0.55)};
  const Spinor mu2{2.0 * mu.c1, 2.0 * mu.c2};
  CMatrix p1 = CMatrix::Identity(2, 2), p2 = CMatrix::Identity(2, 2);
  for (int k = 0; k < 3; ++k) {
    p1 = p1 * baxter_symbol(u - 2.0 * double(k) * mp.eta(), z, mu, mp);
    p2 = p2 * baxter_symbol(u - 2.0 * double(k) * mp.eta(), z, mu2, mp);
  }
  CHECK((p2 - 8.0 * p1).cwiseAbs().maxCoeff() / p2.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("lambda symbol forms") {
  const cd u{0.31, 0.17}, g{0.21, 0.13}, a{0.17, 0.06}, b{0.33, -0.08};
  for (bool tilde : {false, true}) {
    const auto gen = lambda_symbol(u, g, a, b, LambdaForm::generator, tilde, mp);
    const auto th = lambda_symbol(u, g, a, b, LambdaForm::theta, tilde, mp);
    const auto gam = lambda_symbol(u, g, a, b, LambdaForm::gamma_factorized, tilde, mp);
    CHECK(operator_identity_residual(gen, th, mp, 151, 8) < 1e-10);
    CHECK(operator_identity_residual(th, gam, mp, 152, 8) < 1e-10);
  }

  // Parametrized spinors reproduce their components.
  const Spinor lam = Spinor::lambda_of(a, 0.5 * mp.tau(), mp.prec());
  CHECK(rel_dev(lam.c1, theta(4, a, 0.5 * mp.tau(), mp.prec())) < 1e-13);
  CHECK(rel_dev(lam.c2, theta(3, a, 0.5 * mp.tau(), mp.prec())) < 1e-13);
}

TEST_CASE("lambda tilde is the quasiperiod swap") {
  const cd u{0.31, 0.17}, g{0.21, 0.13}, a{0.17, 0.06}, b{0.33, -0.08};
  const ModularParams sw = mp.swapped();
  const auto lt = lambda_symbol(u, g, a, b, LambdaForm::generator, true, mp);
  const auto ls = lambda_symbol(u, g, a, b, LambdaForm::generator, false, sw);
  const auto fns = test_functions(mp);
  PointSampler s(153);
  for (int i = 0; i < 5; ++i) {
    const cd z = s.sample_z(mp);
    double s1 = 0.0, s2 = 0.0;
    const cd v1 = lt.apply(fns[1], z, &s1);
    const cd v2 = ls.apply(fns[1], z, &s2);
    CHECK(std::abs(v1 - v2) / std::max({s1, s2}) < 1e-13);
  }
}

TEST_CASE("lambda star-triangle form through quadrature") {
  const cd g{0.21, 0.13}, a{0.17, 0.06}, b{0.33, -0.08};
  const auto fns = test_functions(mp);
  for (int i = 1; i <= 2; ++i)
    CHECK(lambda_star_triangle_residual(g, a, b, fns[i], cd(0.13, 0.0), quad, mp) < 1e-8);
}

TEST_CASE("product of constituent symbols vs the closed fused form") {
  // (n,m) = (1,1) at the spectral point where the outer M collapses.
  const cd g{0.21, 0.13}, a{0.17, 0.06}, b{0.33, -0.08};
  const cd u2 = -mp.eta() - 0.5 * mp.tau();
  const cd u = g + 2.0 * u2;
  const cd u1 = 0.5 * (u + g);
  const cd ettau = mp.eta() + 0.5 * mp.tau();
  const auto prod =
      compose(lambda_symbol(u, g, a, b, LambdaForm::generator, false, mp),
              lambda_symbol(u - 2.0 * mp.eta(), g, a, b, LambdaForm::generator, true, mp));
  Mero1 pre = [=](cd z) {
    return gamma_pm(a, z, u1 + 2.0 * ettau, mp) * gamma_pm(b, z, mp.eta() + ettau, mp) *
           gamma_pm(b, z, 0.5 * mp.tau() + ettau, mp);
  };
  Mero1 post = [=](cd z) { return gamma_pm(a, z, -u1 + ettau, mp); };
  const auto closed =
      compose(DifferenceOperator::multiplication(pre),
              compose(m_lattice(1, 1, false, mp), DifferenceOperator::multiplication(post)))
          .scaled(gamma_nm_constant(1, 1, u, mp));
  CHECK(operator_identity_residual(prod, closed, mp, 154, 8) < 1e-8);
}

TEST_CASE("fused double kernel matches its term decomposition") {
  const FusedDouble fd(cd(0.31, 0.17), cd(0.27, 0.13), 1, 1, mp);
  const auto f = test_functions(mp)[1];
  PointSampler s(155);
  for (int i = 0; i < 4; ++i) {
    const cd a = s.sample_z(mp), x = s.sample_z(mp), z = s.sample_z(mp);
    cd manual = 0.0;
    for (std::size_t t = 0; t < fd.lattice().terms().size(); ++t)
      manual += fd.term_coefficient(t, a, z, x) * f(z + fd.lattice().terms()[t].shift_value);
    CHECK(rel_dev(fd.apply_kernel(a, x, f, z), manual) < 1e-14);
  }
}
