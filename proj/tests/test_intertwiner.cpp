#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ybe/intertwiner.hpp"

using namespace ybe;

namespace {
const ModularParams mp({0.20, 1.00}, {0.35, 0.40});
const QuadratureConfig quad{64, 3, 1e-9};
}

TEST_CASE("lattice endpoints") {
  const auto m0 = m_lattice(0, 0, false, mp);
  REQUIRE(m0.terms().size() == 1);
  CHECK(m0.terms()[0].shift == LatticeShift{});
  CHECK(std::abs(m0.terms()[0].coeff(cd(0.2, 0.05)) - 1.0) == 0.0);

  const auto mh = m_lattice(0, 0, true, mp);
  REQUIRE(mh.terms().size() == 1);
  CHECK(mh.terms()[0].shift == LatticeShift{0, 0, 1});
  CHECK(std::abs(mh.terms()[0].shift_value - 0.5) == 0.0);
}

TEST_CASE("contiguous relations") {
  for (int k : {3, 4}) {
    CHECK(contiguous_check(k, 0, 0, false, mp, 100 + k) < 1e-10);
    CHECK(contiguous_check(k, 1, 1, false, mp, 102 + k) < 1e-10);
    CHECK(contiguous_check(k, 0, 0, true, mp, 104 + k) < 1e-10);
    CHECK(contiguous_check(k, 1, 0, true, mp, 106 + k) < 1e-10);
  }
}

TEST_CASE("k and path independence") {
  for (auto [n, m] : {std::pair{1, 1}, {2, 1}, {1, 2}}) {
    const auto a = m_lattice(n, m, false, mp, 3, LatticePath::tau_first);
    CHECK(operator_identity_residual(a, m_lattice(n, m, false, mp, 4), mp, 110, 6) < 1e-10);
    CHECK(operator_identity_residual(a, m_lattice(n, m, false, mp, 3, LatticePath::eta_first),
                                     mp, 111, 6) < 1e-10);
  }
}

TEST_CASE("lattice intertwiner is symmetric in the quasiperiods") {
  // M(n eta + m tau/2) built with 2 eta and tau interchanged is
  // M'(m eta' + n tau'/2) with eta' = tau/2; the two agree pointwise.
  const ModularParams sw = mp.swapped();
  const auto fns = test_functions(mp);
  PointSampler s(109);
  for (auto [n, m] : {std::pair{1, 0}, {1, 1}, {2, 1}}) {
    const auto direct = m_lattice(n, m, false, mp);
    const auto swapped = m_lattice(m, n, false, sw);
    for (int i = 0; i < 4; ++i) {
      const cd z = s.sample_z(mp);
      double s1 = 0.0, s2 = 0.0;
      const cd v1 = direct.apply(fns[1], z, &s1);
      const cd v2 = swapped.apply(fns[1], z, &s2);
      CHECK(std::abs(v1 - v2) / std::max({s1, s2}) < 1e-12);
    }
  }
}

TEST_CASE("B chain at m = 1 matches the hand-rolled form") {
  const auto chain = m_lattice(0, 1, false, mp, 3);
  const auto hand = compose(b_op(3, 0.0, mp), DifferenceOperator::multiplication([](cd z) {
                              return safe_div(cd(1.0), theta(3, z, mp.eta(), mp.prec()));
                            }));
  CHECK(operator_identity_residual(chain, hand, mp, 112, 6) < 1e-13);
}

TEST_CASE("null space of the intertwiner") {
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      CHECK(null_space_check(FiniteRep{n, m, false}, mp, 113 + 3 * n + m) < 1e-9);
  CHECK(null_space_check(FiniteRep{1, 0, true}, mp, 122) < 1e-9);

  // Every phi element of rep (1,1) is annihilated by M(2 eta + tau).
  const auto op = m_lattice(2, 2, false, mp);
  const auto basis = phi_basis(FiniteRep{1, 1, false}, mp);
  PointSampler s(123);
  for (const auto& f : basis.funcs) {
    for (int i = 0; i < 3; ++i) {
      const cd z = s.sample_z(mp);
      double scale = 0.0;
      const cd v = op.apply(f, z, &scale);
      CHECK(std::abs(v) / scale < 1e-9);
    }
  }
}

TEST_CASE("intertwining relations on the lattice") {
  CHECK(intertwining_check(1, 0, false, false, mp, 130) < 1e-9);
  CHECK(intertwining_check(1, 1, false, false, mp, 131) < 1e-9);
  CHECK(intertwining_check(1, 0, false, true, mp, 132) < 1e-9);
  CHECK(intertwining_check(0, 1, false, true, mp, 133) < 1e-9);
  CHECK(intertwining_check(1, 0, true, false, mp, 134) < 1e-9);
}

TEST_CASE("m_integral") {
  const auto f = test_functions(mp)[1];
  const cd g{-0.1, -0.31};

  // Self-convergence under node doubling.
  const auto r = m_integral(g, f, cd(0.21, 0.04), quad, mp);
  CHECK(r.last_rel_diff < quad.rel_tol);
  CHECK(r.nodes <= 512);

  // Evenness of the output.
  const auto r2 = m_integral(g, f, cd(-0.21, -0.04), quad, mp);
  CHECK(rel_dev(r.value, r2.value) < 1e-12);

  // Domain violations are explicit errors naming the condition.
  CHECK_THROWS_AS(m_integral(cd(0.1, 0.31), f, cd(0.2, 0.0), quad, mp), DomainError);
}

TEST_CASE("elliptic beta integral") {
  DomainCheck dom;
  const double r = beta_integral_check({0.21, -0.05}, {0.13, -0.04}, 0.31, {0.17, 0.03}, 0.40,
                                       quad, mp, &dom);
  CHECK(r < 1e-6);
  CHECK(dom.min_margin() > 0.02);

  // Kernel symmetry: z1 <-> x with a <-> b leaves the residual unchanged in
  // size (both tiny).
  const double rs = beta_integral_check({0.13, -0.04}, {0.21, -0.05}, 0.40, {0.17, 0.03},
                                        0.31, quad, mp);
  CHECK(rs < 1e-6);

  // a -> 0 regression at a = -0.05i.
  CHECK(beta_integral_check({0.0, -0.05}, {0.13, -0.04}, 0.31, {0.17, 0.03}, 0.40, quad, mp) <
        1e-6);

  // Out-of-domain parameters are rejected.
  CHECK_THROWS_AS(
      beta_integral_check({0.21, 0.05}, {0.13, -0.04}, 0.31, {0.17, 0.03}, 0.40, quad, mp),
      DomainError);
}

TEST_CASE("star-triangle relation") {
  const auto fns = test_functions(mp);
  const cd alpha{0.11, -0.05}, beta{0.07, -0.06}, x{0.29, 0.0};
  double worst = 0.0;
  for (int i = 1; i <= 3; ++i)
    for (const cd z : {cd(0.13, 0.0), cd(0.31, 0.0), cd(0.41, 0.0)})
      worst = std::max(worst, star_triangle_check(alpha, beta, x, fns[i], z, quad, mp));
  CHECK(worst < 1e-6);

  // Residual stable under a finer starting grid.
  const QuadratureConfig fine{128, 3, 1e-10};
  CHECK(star_triangle_check(alpha, beta, x, fns[1], cd(0.31, 0.0), fine, mp) < 1e-6);
}

TEST_CASE("inversion on even test functions") {
  const auto fns = test_functions(mp);
  const cd z{0.23, 0.05};
  for (int i = 1; i <= 3; ++i) {
    CHECK(inversion_check(1, 0, fns[i], z, quad, mp) < 1e-6);
    CHECK(inversion_check(0, 1, fns[i], z, quad, mp) < 1e-6);
  }
  // At g = eta + tau/2 the one-dimensional representation splits off; the
  // identity holds on even 1-periodic functions without that component.
  Mero1 mean_free = [](cd w) {
    return std::exp(2.0 * kPi * kI * w) + std::exp(-2.0 * kPi * kI * w);
  };
  CHECK(inversion_check(1, 1, mean_free, z, quad, mp) < 1e-6);
  // A constant is annihilated: it spans the split representation.
  Mero1 one = [](cd) { return cd(1.0); };
  CHECK(std::abs(m_lattice(1, 1, false, mp).apply(one, z)) < 1e-12);
}

TEST_CASE("quadrature validation") {
  CHECK_THROWS_AS((QuadratureConfig{8, 3, 1e-9}.validate()), DomainError);
  // Non-convergent doubling is an explicit precision failure.
  Mero1 rough = [](cd x) { return std::abs(x.real() - 0.37) < 0.2 ? cd(1.0) : cd(0.0); };
  CHECK_THROWS_AS(periodic_quadrature(rough, QuadratureConfig{16, 2, 1e-12}), PrecisionError);
}
