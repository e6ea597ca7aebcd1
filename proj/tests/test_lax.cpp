#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ybe/lax.hpp"

using namespace ybe;

namespace {
const ModularParams mp({0.20, 1.00}, {0.35, 0.40});
}

TEST_CASE("weights") {
  const auto w0 = weights(0.0, false, mp);
  for (int a = 0; a < 4; ++a) CHECK(std::abs(w0[a] - 1.0) < 1e-15);
  const auto wt = weights(0.0, true, mp);
  for (int a = 0; a < 4; ++a) CHECK(std::abs(wt[a] - 1.0) < 1e-15);
}

TEST_CASE("baxter R at u = 0 is twice the permutation") {
  const CMatrix r0 = baxter_r(0.0, false, mp);
  CMatrix p = CMatrix::Zero(4, 4);
  p(0, 0) = p(3, 3) = p(1, 2) = p(2, 1) = 2.0;
  CHECK((r0 - p).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("baxter R block structure and eight-vertex zeros") {
  const cd u{0.31, 0.17};
  const auto w = weights(u, false, mp);
  const CMatrix r = baxter_r(u, false, mp);
  // Displayed 2x2-block entries.
  CHECK(rel_dev(r(0, 0), w[0] + w[3]) < 1e-15);
  CHECK(rel_dev(r(0, 3), w[1] - w[2]) < 1e-15);
  CHECK(rel_dev(r(3, 0), w[1] - w[2]) < 1e-15);
  CHECK(rel_dev(r(1, 1), w[0] - w[3]) < 1e-15);
  CHECK(rel_dev(r(1, 2), w[1] + w[2]) < 1e-15);
  // Exactly eight vanishing entries, structurally zero.
  int zeros = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(r(i, j)) == 0.0) ++zeros;
  CHECK(zeros == 8);
}

TEST_CASE("yang-baxter equation") {
  PointSampler s(81);
  auto plain = [&](cd w) { return baxter_r(w, false, mp); };
  auto tilde = [&](cd w) { return baxter_r(w, true, mp); };
  for (int i = 0; i < 20; ++i) {
    const cd u = s.rect(-0.4, 0.4, -0.3, 0.3), v = s.rect(-0.4, 0.4, -0.3, 0.3);
    CHECK(ybe_residual(plain, u, v) < 1e-10);
    CHECK(ybe_residual(tilde, u, v) < 1e-10);
  }
}

TEST_CASE("l = 1/2 restriction is proportional to baxter") {
  const cd u{0.31, 0.17};
  const auto lax = lax_l({u, SpinParams::from_ell(0.5, mp).g}, LaxVariant::sklyanin, mp);
  double fit = 0.0;
  const CMatrix res =
      restrict_to_basis(lax, phi_basis(FiniteRep{1, 0, false}, mp), mp, 82, &fit);
  const cd t2e = theta(1, 2.0 * mp.eta(), mp.tau(), mp.prec());
  CHECK(fit < 1e-12);
  CHECK((res - t2e * baxter_r(u, false, mp)).cwiseAbs().maxCoeff() / std::abs(t2e) < 1e-10);
}

TEST_CASE("factorized lax equals the direct form") {
  const SpectralParams sp{cd(0.29, 0.11), cd(0.27, 0.33)};
  for (auto v : {LaxVariant::sklyanin, LaxVariant::doub, LaxVariant::doub_tilde})
    CHECK(operator_matrix_residual(lax_l(sp, v, mp), lax_l_factorized(sp, v, mp), mp, 83, 8) <
          1e-10);
}

TEST_CASE("rll relations") {
  const cd u{0.31, 0.17}, v{0.12, -0.08}, g{0.53, 0.21};
  CHECK(rll_residual(baxter_r(u - v, false, mp), lax_l({u, g}, LaxVariant::sklyanin, mp),
                     lax_l({v, g}, LaxVariant::sklyanin, mp), mp, 84, 6) < 1e-9);
  CHECK(rll_residual(baxter_r(u - v, false, mp), lax_l({u, g}, LaxVariant::doub, mp),
                     lax_l({v, g}, LaxVariant::doub, mp), mp, 85, 6) < 1e-9);
  // sigma3-twisted form.
  CHECK(rll_residual(baxter_r(u - v, false, mp), lax_l({u, g}, LaxVariant::doub, mp),
                     lax_l({v, g}, LaxVariant::doub, mp), mp, 86, 6, true) < 1e-9);
  CHECK(rll_residual(baxter_r(u - v, true, mp), lax_l({u, g}, LaxVariant::doub_tilde, mp),
                     lax_l({v, g}, LaxVariant::doub_tilde, mp), mp, 87, 6) < 1e-9);

  // Both quantum slots restricted to Theta_2^+: an 8x8 matrix identity.
  const cd gh = SpinParams::from_ell(0.5, mp).g;
  const auto basis = phi_basis(FiniteRep{1, 0, false}, mp);
  const CMatrix lu = restrict_to_basis(lax_l({u, gh}, LaxVariant::sklyanin, mp), basis, mp, 88);
  const CMatrix lv = restrict_to_basis(lax_l({v, gh}, LaxVariant::sklyanin, mp), basis, mp, 89);
  CHECK(rll_matrix_residual(baxter_r(u - v, false, mp), lu, lv, 2) < 1e-10);
}

TEST_CASE("lax preserves theta spaces up to n = 3") {
  const cd u{0.31, 0.17};
  for (int n = 1; n <= 3; ++n) {
    const auto lax =
        lax_l({u, SpinParams::from_ell(0.5 * n, mp).g}, LaxVariant::sklyanin, mp);
    double fit = 0.0;
    restrict_to_basis(lax, phi_basis(FiniteRep{n, 0, false}, mp), mp, 90 + n, &fit);
    CHECK(fit < 1e-8);
  }
}

TEST_CASE("sigma3 shift identity") {
  const SpectralParams sp{cd(0.29, 0.11), cd(0.27, 0.33)};
  const cd u1 = sp.u1(), u2 = sp.u2();
  const std::vector<cd> s3 = {1.0, 0.0, 0.0, -1.0};
  const auto lhs = mat_mul_numeric(
      lax_l(SpectralParams::from_lightcone(u1 - 0.5 * mp.tau(), u2 - 0.5 * mp.tau()),
            LaxVariant::doub, mp),
      s3, 2);
  const cd scal = -std::exp(2.0 * kPi * kI * (mp.eta() - 0.5 * mp.tau() + u1 + u2));
  const auto rhs = mat_mul_numeric_left(s3, lax_l(sp, LaxVariant::doub, mp), 2).scaled(scal);
  CHECK(operator_matrix_residual(lhs, rhs, mp, 94, 8) < 1e-10);
}

TEST_CASE("weight denominator guard") {
  // theta2(eta) cannot vanish at the default parameters, but the light-cone
  // bookkeeping must keep u1 + u2 = u and u1 - u2 = g exactly.
  const SpectralParams sp{cd(0.31, 0.17), cd(0.53, 0.21)};
  CHECK(rel_dev(sp.u1() + sp.u2(), sp.u) < 1e-15);
  CHECK(rel_dev(sp.u1() - sp.u2(), sp.g) < 1e-15);
}
