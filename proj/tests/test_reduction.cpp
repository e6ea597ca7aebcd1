#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ybe/reduction.hpp"

using namespace ybe;

namespace {
const ModularParams mp({0.20, 1.00}, {0.35, 0.40});
const cd u0{0.31, 0.17};
const cd g0{0.27, 0.13};
}

TEST_CASE("worked two-dimensional reduction") {
  const auto w = two_dim_reduction_worked(u0, g0, mp, 160);
  CHECK(w.genfun_closed_form < 1e-11);
  CHECK(w.ab_expansion < 1e-11);
  CHECK(w.entry_identification < 1e-10);
  CHECK(w.pipeline_residual < 1e-8);
  CHECK(w.sigma3_scalar < 1e-10);
}

TEST_CASE("central reduction reproduces the twisted lax operator") {
  CHECK(reduction_vs_lax_residual(u0, g0, mp, 161) < 1e-8);
  // Other parameter points.
  CHECK(reduction_vs_lax_residual(cd(0.12, -0.08), cd(0.41, 0.22), mp, 162) < 1e-8);
}

TEST_CASE("trivial representation reduces to a scalar") {
  const ReducedFirstSpace red(u0, FiniteRep{0, 0, false}, g0, mp, 163,
                              ReductionSource::reduction);
  const auto fns = test_functions(mp);
  PointSampler s(164);
  cd ratio0 = 0.0;
  bool first = true;
  for (int i = 1; i <= 3; ++i)
    for (int t = 0; t < 3; ++t) {
      const cd z2 = s.sample_z(mp);
      const cd ratio = red.apply_entries(fns[i], z2).values(0, 0) / fns[i](z2);
      if (first) {
        ratio0 = ratio;
        first = false;
      } else {
        CHECK(rel_dev(ratio, ratio0) < 1e-10);
      }
    }
}

TEST_CASE("reduction agrees with fusion up to one scalar") {
  for (auto rep : {FiniteRep{1, 0, false}, FiniteRep{0, 1, false}, FiniteRep{1, 1, false},
                   FiniteRep{2, 0, false}, FiniteRep{1, 0, true}}) {
    CHECK(reduction_vs_fusion_residual(u0, rep, g0, mp, 165) < 1e-7);
  }
}

TEST_CASE("membership certifies the invariant subspace") {
  const ReducedFirstSpace red(u0, FiniteRep{1, 1, false}, g0, mp, 166,
                              ReductionSource::reduction);
  (void)red.apply_entries(test_functions(mp)[1], cd(0.22, 0.03));
  CHECK(red.fit_residual() < 1e-8);
}

TEST_CASE("both-space reduction and its RLL certificates") {
  const cd w{0.19, 0.0}, up{0.47, 0.06};

  const auto r11 = reduce_both_spaces(w, {1, 0, false}, {1, 0, false}, mp, 167);
  CHECK(r11.fit_residual < 1e-8);
  CHECK(r11.r_phi.rows() == 4);
  CHECK(reduced_rll_residual(r11, up, up - w, false, mp, 168) < 1e-8);
  CHECK(reduced_rll_residual(r11, up, up - w, true, mp, 169) < 1e-8);

  const auto r10 = reduce_both_spaces(w, {1, 0, false}, {0, 1, false}, mp, 170);
  CHECK(reduced_rll_residual(r10, up, up - w, true, mp, 171) < 1e-8);
  CHECK(reduced_rll_residual(r10, up, up - w, false, mp, 172) < 1e-8);

  const auto r00 = reduce_both_spaces(w, {0, 0, false}, {0, 0, false}, mp, 173);
  CHECK(r00.r_phi.rows() == 1);
}

TEST_CASE("normalization constant") {
  const ReducedFirstSpace red(u0, FiniteRep{1, 0, false}, g0, mp, 174,
                              ReductionSource::reduction);
  const cd g1 = FiniteRep{1, 0, false}.g(mp);
  const cd expect = elliptic_gamma_inv(-u0 + g1 + g0, mp) * elliptic_gamma_inv(-u0 + g1 - g0, mp);
  CHECK(rel_dev(red.normalization(), expect) < 1e-13);
}
