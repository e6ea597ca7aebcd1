#include "ybe/reduction.hpp"

namespace ybe {

namespace {

CMatrix phi_samples(const BasisSet& basis, const std::vector<cd>& points) {
  CMatrix m(points.size(), basis.funcs.size());
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t k = 0; k < basis.funcs.size(); ++k) m(p, k) = basis.funcs[k](points[p]);
  return m;
}

CMatrix pseudo_inverse(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-10 * sv(0))
    throw FitError("reduction: sample matrix numerically rank-deficient");
  CMatrix sinv = CMatrix::Zero(sv.size(), sv.size());
  for (int i = 0; i < sv.size(); ++i) sinv(i, i) = 1.0 / sv(i);
  return svd.matrixV() * sinv * svd.matrixU().adjoint();
}

}  // namespace

ReducedFirstSpace::ReducedFirstSpace(cd u, FiniteRep rep1, cd g2, const ModularParams& mp,
                                     std::uint64_t seed, ReductionSource source)
    : mp_(mp), u_(u), g2_(g2), rep1_(rep1), source_(source),
      lattice_(m_lattice(rep1.n, rep1.m, rep1.half, mp)),
      eps_nm_(eps_nm_constant(rep1.n, rep1.m,
                              u + rep1.g(mp) - 2.0 * mp.eta() - mp.tau(), mp)) {
  const cd g1 = rep1.g(mp);
  c_norm_ = elliptic_gamma_inv(-u + g1 + g2, mp) * elliptic_gamma_inv(-u + g1 - g2, mp);

  const BasisSet phi = phi_basis(rep1, mp);
  PointSampler sampler(seed);
  const int dim = rep1.dim();
  z1_grid_ = sampler.sample_zs(mp, 2 * dim);
  z3_grid_ = sampler.sample_zs(mp, 2 * dim);
  z1_val_ = sampler.sample_zs(mp, std::max(1, dim / 2 + 1));
  z3_val_ = sampler.sample_zs(mp, std::max(1, dim / 2 + 1));
  pinv1_ = pseudo_inverse(phi_samples(phi, z1_grid_));
  pinv3_ = pseudo_inverse(phi_samples(phi, z3_grid_));
  phi1_val_ = phi_samples(phi, z1_val_);
  phi3_val_ = phi_samples(phi, z3_val_);

  in_const_.resize(dim);
  in_index_.resize(dim);
  for (int j = 0; j <= rep1.n; ++j)
    for (int l = 0; l <= rep1.m; ++l) {
      const int fit_idx = rep1.flat(j, l);
      in_const_[fit_idx] = kernel_expansion_constant(rep1, j, l, mp);
      in_index_[fit_idx] =
          rep1.half ? fit_idx : rep1.flat(rep1.n - j, rep1.m - l);
    }

  // Validate the double fit once at held-out points: the kernel's z1 and z3
  // dependence must lie in the phi spans, or the restriction is meaningless.
  const cd z2_probe = sampler.sample_z(mp);
  const int p1 = static_cast<int>(z1_grid_.size());
  const int p3 = static_cast<int>(z3_grid_.size());
  for (std::size_t t = 0; t < lattice_.terms().size(); ++t) {
    CMatrix grid(p1, p3);
    for (int p = 0; p < p1; ++p)
      for (int q = 0; q < p3; ++q)
        grid(p, q) = term_coefficient(t, z1_grid_[p], z2_probe, z3_grid_[q]);
    const CMatrix coeffs = pinv1_ * grid * pinv3_.transpose();
    const double scale = grid.cwiseAbs().maxCoeff();
    for (std::size_t p = 0; p < z1_val_.size(); ++p)
      for (std::size_t q = 0; q < z3_val_.size(); ++q) {
        const cd actual = term_coefficient(t, z1_val_[p], z2_probe, z3_val_[q]);
        cd predicted = 0.0;
        for (int r = 0; r < dim; ++r)
          for (int k = 0; k < dim; ++k)
            predicted += phi1_val_(p, r) * coeffs(r, k) * phi3_val_(q, k);
        fit_residual_ = std::max(fit_residual_, std::abs(actual - predicted) /
                                                    std::max({scale, std::abs(actual), 1e-300}));
      }
  }
  if (fit_residual_ > 1e-7)
    throw FitError("reduction: kernel does not lie in the phi spans (residual " +
                   std::to_string(fit_residual_) + ")");
}

cd ReducedFirstSpace::term_coefficient(std::size_t t, cd z1, cd z2, cd z3) const {
  if (source_ == ReductionSource::fusion) {
    // Fused-symbol kernel at the shifted spectral point: matching the four
    // gamma-factor groups of the two kernels through the reflection identity
    // fixes the shift as g_rep - 2 eta - tau.
    const cd uf = u_ + rep1_.g(mp_) - 2.0 * mp_.eta() - mp_.tau();
    const cd tau = mp_.tau(), eta = mp_.eta();
    const cd u1 = 0.5 * (uf + g2_), u2 = 0.5 * (uf - g2_);
    const cd lat = rep1_.g(mp_) - eta - 0.5 * tau;
    const auto& term = lattice_.terms()[t];
    const cd zs = z2 + term.shift_value;
    return eps_nm_ * gamma_pm(z1, z2, u1 + 2.0 * eta + tau, mp_) *
           gamma_pm(z3, z2, -u2 + lat, mp_) * term.coeff(z2) *
           gamma_pm(z3, zs, u2 + 2.0 * eta + tau, mp_) *
           gamma_pm(z1, zs, -u1 + lat, mp_);
  }

  // Central reduction formula with every gamma ratio traded for a finite
  // theta product: the two ratio groups pair numerator and denominator at
  // lattice-offset arguments, so no gamma function is evaluated near a pole.
  const cd g1 = rep1_.g(mp_);
  const cd ettau = mp_.eta() + 0.5 * mp_.tau();
  const cd beta2 = -0.5 * u_ - 0.5 * (g1 + g2_) + ettau;  // F2 args (denominator)
  const cd beta4 = -0.5 * u_ + 0.5 * (g2_ - g1) + ettau;  // F4 args (denominator)
  const auto& term = lattice_.terms()[t];
  const int half_units = rep1_.half ? 1 : 0;

  cd prod = c_norm_ * term.coeff(z2);
  for (int s1 = -1; s1 <= 1; s1 += 2) {
    for (int s2 = -1; s2 <= 1; s2 += 2) {
      // F3 / F2: argument offset s2*shift + g1 - eta - tau/2.
      const int n2 = (rep1_.n + s2 * term.shift.a) / 2;
      const int nt = (rep1_.m + s2 * term.shift.b) / 2;
      const int k1 = (half_units + s2 * term.shift.c) / 2;
      const cd v = double(s1) * z1 + double(s2) * z2 + beta2 + double(k1);
      prod *= gamma_ratio_theta(v, n2, nt, mp_);
    }
  }
  for (int s2 = -1; s2 <= 1; s2 += 2) {
    for (int s3 = -1; s3 <= 1; s3 += 2) {
      // F1 / F4: argument offset g1 - eta - tau/2 - s2*shift.
      const int n2 = (rep1_.n - s2 * term.shift.a) / 2;
      const int nt = (rep1_.m - s2 * term.shift.b) / 2;
      const int k1 = (half_units - s2 * term.shift.c) / 2;
      const cd v = double(s2) * (z2 + term.shift_value) + double(s3) * z3 + beta4 +
                   double(k1);
      prod *= gamma_ratio_theta(v, n2, nt, mp_);
    }
  }
  return prod;
}

ReducedFirstSpace::Applied ReducedFirstSpace::apply_entries(const Mero1& phi, cd z2) const {
  const int dim = rep1_.dim();
  Applied out;
  out.values = CMatrix::Zero(dim, dim);
  out.scale = Eigen::MatrixXd::Zero(dim, dim);
  const int p1 = static_cast<int>(z1_grid_.size());
  const int p3 = static_cast<int>(z3_grid_.size());

  for (std::size_t t = 0; t < lattice_.terms().size(); ++t) {
    CMatrix grid(p1, p3);
    for (int p = 0; p < p1; ++p)
      for (int q = 0; q < p3; ++q)
        grid(p, q) = term_coefficient(t, z1_grid_[p], z2, z3_grid_[q]);
    const CMatrix coeffs = pinv1_ * grid * pinv3_.transpose();

    const cd phi_shift = phi(z2 + lattice_.terms()[t].shift_value);
    for (int r = 0; r < dim; ++r)
      for (int k = 0; k < dim; ++k) {
        const cd contrib = coeffs(r, k) / in_const_[k] * phi_shift;
        out.values(r, in_index_[k]) += contrib;
        out.scale(r, in_index_[k]) += std::abs(contrib);
      }
  }
  return out;
}

namespace {

// -(1/2) lambda L^doub(u - tau/2) sigma3 with the exact normalization of the
// worked reduction.
OperatorMatrix reduction_target_operator(cd u, cd g2, cd c_norm, const ModularParams& mp,
                                         cd* lambda_out = nullptr) {
  const cd c_a = std::exp(kPi * kI * mp.eta()) / mp.r_tau();
  const cd lambda = -mp.r_tau() * mp.r_tau() * c_norm * c_a *
                    std::exp(-2.0 * kPi * kI * (u + mp.eta()) + 0.5 * kPi * kI * mp.tau());
  if (lambda_out) *lambda_out = lambda;
  const OperatorMatrix lax = lax_l({u - 0.5 * mp.tau(), g2}, LaxVariant::doub, mp);
  const std::vector<cd> s3 = {1.0, 0.0, 0.0, -1.0};
  return mat_mul_numeric(lax, s3, 2).scaled(-0.5 * lambda);
}

}  // namespace

double reduction_vs_lax_residual(cd u, cd g2, const ModularParams& mp, std::uint64_t seed) {
  const ReducedFirstSpace red(u, FiniteRep{1, 0, false}, g2, mp, seed,
                              ReductionSource::reduction);
  const OperatorMatrix target = reduction_target_operator(u, g2, red.normalization(), mp);

  PointSampler sampler(seed + 1);
  const auto fns = test_functions(mp);
  const auto zs = sampler.sample_zs(mp, 4);
  double worst = 0.0;
  for (const auto& f : fns) {
    for (const cd z2 : zs) {
      const auto got = red.apply_entries(f, z2);
      for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 2; ++j) {
          double ts = 0.0;
          const cd tv = target.at(r, j).apply(f, z2, &ts);
          worst = std::max(worst, std::abs(got.values(r, j) - tv) /
                                      std::max({got.scale(r, j), ts, 1e-300}));
        }
    }
  }
  return worst;
}

double reduction_vs_fusion_residual(cd u, FiniteRep rep1, cd g2, const ModularParams& mp,
                                    std::uint64_t seed) {
  const ReducedFirstSpace red(u, rep1, g2, mp, seed, ReductionSource::reduction);
  const ReducedFirstSpace fus(u, rep1, g2, mp, seed, ReductionSource::fusion);

  PointSampler sampler(seed + 1);
  const auto fns = test_functions(mp);
  const auto zs = sampler.sample_zs(mp, 3);
  const int dim = rep1.dim();

  // Global proportionality scalar from the largest-magnitude entry pair.
  cd scal = 0.0;
  double best = -1.0;
  std::vector<ReducedFirstSpace::Applied> reds, fuss;
  for (const auto& f : fns) {
    for (const cd z2 : zs) {
      reds.push_back(red.apply_entries(f, z2));
      fuss.push_back(fus.apply_entries(f, z2));
      const auto& a = reds.back().values;
      const auto& b = fuss.back().values;
      for (int r = 0; r < dim; ++r)
        for (int k = 0; k < dim; ++k)
          if (std::abs(b(r, k)) > best) {
            best = std::abs(b(r, k));
            scal = a(r, k) / b(r, k);
          }
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < reds.size(); ++i) {
    for (int r = 0; r < dim; ++r)
      for (int k = 0; k < dim; ++k) {
        const double sc = std::max({reds[i].scale(r, k),
                                    std::abs(scal) * fuss[i].scale(r, k), 1e-300});
        worst = std::max(worst,
                         std::abs(reds[i].values(r, k) - scal * fuss[i].values(r, k)) / sc);
      }
  }
  return worst;
}

ReducedRMatrix reduce_both_spaces(cd u, FiniteRep rep1, FiniteRep rep2,
                                  const ModularParams& mp, std::uint64_t seed) {
  const ReducedFirstSpace red(u, rep1, rep2.g(mp), mp, seed, ReductionSource::reduction);
  const int d1 = rep1.dim(), d2 = rep2.dim();
  const BasisSet phi2 = phi_basis(rep2, mp);

  PointSampler sampler(seed + 2);
  const std::vector<cd> z2_grid = sampler.sample_zs(mp, 2 * d2);
  const std::vector<cd> z4_grid = sampler.sample_zs(mp, 2 * d2);
  const CMatrix pinv2 = pseudo_inverse(phi_samples(phi2, z2_grid));
  const CMatrix pinv4 = pseudo_inverse(phi_samples(phi2, z4_grid));

  // Entry values of the first-space reduction applied to the second-space
  // generating function, over the (z2, z4) grids.
  std::vector<std::vector<CMatrix>> vals(z2_grid.size(),
                                         std::vector<CMatrix>(z4_grid.size()));
  for (std::size_t q = 0; q < z4_grid.size(); ++q) {
    const cd z4 = z4_grid[q];
    Mero1 gen2 = [&, z4](cd w) { return generating_function(rep2, w, z4, mp); };
    for (std::size_t p = 0; p < z2_grid.size(); ++p)
      vals[p][q] = red.apply_entries(gen2, z2_grid[p]).values;
  }

  ReducedRMatrix out;
  out.rep1 = rep1;
  out.rep2 = rep2;
  out.u = u;
  out.fit_residual = red.fit_residual();
  out.r_mixed = CMatrix::Zero(d1 * d2, d1 * d2);
  for (int r1 = 0; r1 < d1; ++r1)
    for (int j1 = 0; j1 < d1; ++j1) {
      CMatrix grid(z2_grid.size(), z4_grid.size());
      for (std::size_t p = 0; p < z2_grid.size(); ++p)
        for (std::size_t q = 0; q < z4_grid.size(); ++q) grid(p, q) = vals[p][q](r1, j1);
      const CMatrix coeffs = pinv2 * grid * pinv4.transpose();
      for (int j = 0; j <= rep2.n; ++j)
        for (int l = 0; l <= rep2.m; ++l) {
          const int fit_idx = rep2.flat(j, l);
          const int in2 = rep2.half ? fit_idx : rep2.flat(rep2.n - j, rep2.m - l);
          const cd cexp = kernel_expansion_constant(rep2, j, l, mp);
          for (int r2 = 0; r2 < d2; ++r2)
            out.r_mixed(r1 * d2 + r2, j1 * d2 + in2) = coeffs(r2, fit_idx) / cexp;
        }
    }

  const CMatrix c1 = interbasis_matrix(rep1, mp, seed + 3).C;
  const CMatrix c2 = interbasis_matrix(rep2, mp, seed + 4).C;
  out.r_phi = out.r_mixed * kron(c1, c2).transpose().inverse();
  return out;
}

double reduced_rll_residual(const ReducedRMatrix& red, cd up, cd vp, bool tilde,
                            const ModularParams& mp, std::uint64_t seed) {
  const int d1 = red.rep1.dim(), d2 = red.rep2.dim();
  const cd g1 = red.rep1.g(mp), g2 = red.rep2.g(mp);
  double fit1 = 0.0, fit2 = 0.0;
  const auto gens1 = tilde ? generators_S_tilde(g1, mp)
                           : generators_S(SpinParams::from_g(g1, mp), true, mp);
  const auto gens2 = tilde ? generators_S_tilde(g2, mp)
                           : generators_S(SpinParams::from_g(g2, mp), true, mp);
  const auto mats1 = matrix_rep(gens1, phi_basis(red.rep1, mp), mp, seed + 5, &fit1);
  const auto mats2 = matrix_rep(gens2, phi_basis(red.rep2, mp), mp, seed + 6, &fit2);
  const CMatrix l1 = lax_from_matrices(up, tilde, mats1, mp);
  const CMatrix l2 = lax_from_matrices(vp, tilde, mats2, mp);
  return rll_two_space_residual(red.r_phi, l1, l2, d1, d2);
}

WorkedReduction two_dim_reduction_worked(cd u, cd g, const ModularParams& mp,
                                         std::uint64_t seed) {
  const PrecisionConfig prec = mp.prec();
  const cd tau = mp.tau(), eta = mp.eta();
  auto tb = [&](int k, cd w) { return theta(k, w, 0.5 * tau, prec); };
  PointSampler sampler(seed);
  WorkedReduction out{};

  // Generating function of the two-dimensional representation.
  for (int trial = 0; trial < 5; ++trial) {
    const cd z1 = sampler.sample_z(mp), z3 = sampler.sample_z(mp);
    const cd closed = -0.5 * mp.r_tau() * mp.r_tau() * std::exp(0.5 * kPi * kI * tau) *
                      (tb(4, z1) * tb(3, z3) + tb(3, z1) * tb(4, z3));
    const cd direct = gamma_pm(z1, z3, 2.0 * eta + 0.5 * tau, mp);
    out.genfun_closed_form = std::max(out.genfun_closed_form, rel_dev(direct, closed));
  }

  // A(z2, z1) = theta4bar(-z2-(u-g)/2-eta+tau/4) theta1(z2 +- z1 -(u+g)/2+tau/4)
  // expands as a(z2) th4(z1) + c(z2) th3(z1); B analogously with b, d.
  const cd w_m = -0.5 * (u - g) - eta + 0.25 * tau;  // argument shift of the bar thetas
  const cd w_p = -0.5 * (u + g) + 0.25 * tau;
  auto theta1_pm = [&](cd x, cd y) {
    return theta(1, x + y, tau, prec) * theta(1, x - y, tau, prec);
  };
  auto a_fn = [&](cd z2) { return -0.5 * tb(4, -z2 + w_m) * tb(3, z2 + w_p); };
  auto b_fn = [&](cd z2) { return 0.5 * tb(3, -z2 + w_m) * tb(3, z2 + w_p); };
  auto c_fn = [&](cd z2) { return 0.5 * tb(4, -z2 + w_m) * tb(4, z2 + w_p); };
  auto d_fn = [&](cd z2) { return -0.5 * tb(3, -z2 + w_m) * tb(4, z2 + w_p); };
  for (int trial = 0; trial < 5; ++trial) {
    const cd z1 = sampler.sample_z(mp), z2 = sampler.sample_z(mp);
    const cd a_full = tb(4, -z2 + w_m) * theta1_pm(z2 + w_p, z1);
    const cd b_full = -tb(3, -z2 + w_m) * theta1_pm(z2 + w_p, z1);
    out.ab_expansion = std::max(
        out.ab_expansion, rel_dev(a_full, a_fn(z2) * tb(4, z1) + c_fn(z2) * tb(3, z1)));
    out.ab_expansion = std::max(
        out.ab_expansion, rel_dev(b_full, b_fn(z2) * tb(4, z1) + d_fn(z2) * tb(3, z1)));
  }

  // Assemble the displayed 2x2 operator from a, b, c, d and compare with
  // -(1/2) lambda L^doub(u - tau/2) sigma3.
  const cd c_norm = elliptic_gamma_inv(-u + 2.0 * eta + 0.5 * tau + g, mp) *
                    elliptic_gamma_inv(-u + 2.0 * eta + 0.5 * tau - g, mp);
  cd lambda = 0.0;
  const OperatorMatrix target = reduction_target_operator(u, g, c_norm, mp, &lambda);
  auto entry_op = [&](const std::function<cd(cd)>& coeff) {
    Mero1 cp = [&, coeff](cd z) {
      return lambda * safe_div(coeff(z), theta(1, 2.0 * z, tau, prec));
    };
    Mero1 cm = [&, coeff](cd z) {
      return -lambda * safe_div(coeff(-z), theta(1, 2.0 * z, tau, prec));
    };
    return gaussian_conjugate(DifferenceOperator::term({1, 0, 0}, cp, mp) +
                                  DifferenceOperator::term({-1, 0, 0}, cm, mp),
                              1.0 / eta);
  };
  OperatorMatrix assembled(2, 2);
  assembled.at(0, 0) = entry_op(a_fn);
  assembled.at(0, 1) = entry_op(b_fn);
  assembled.at(1, 0) = entry_op(c_fn);
  assembled.at(1, 1) = entry_op(d_fn);
  out.entry_identification = operator_matrix_residual(assembled, target, mp, seed + 7, 6);

  // Full extraction pipeline for rep (1,0) against the same target.
  out.pipeline_residual = reduction_vs_lax_residual(u, g, mp, seed + 8);

  // sigma3-shift scalar measured as the entry ratio.
  const cd u1 = 0.5 * (u + g), u2 = 0.5 * (u - g);
  const std::vector<cd> s3 = {1.0, 0.0, 0.0, -1.0};
  const OperatorMatrix lhs = mat_mul_numeric(
      lax_l(SpectralParams::from_lightcone(u1 - 0.5 * tau, u2 - 0.5 * tau),
            LaxVariant::doub, mp),
      s3, 2);
  const OperatorMatrix rhs = mat_mul_numeric_left(s3, lax_l({u, g}, LaxVariant::doub, mp), 2);
  const cd expected = -std::exp(2.0 * kPi * kI * (eta - 0.5 * tau + u1 + u2));
  const auto fns = test_functions(mp);
  for (int trial = 0; trial < 5; ++trial) {
    const cd z = sampler.sample_z(mp);
    const cd num = lhs.at(0, 0).apply(fns[1], z);
    const cd den = rhs.at(0, 0).apply(fns[1], z);
    out.sigma3_scalar = std::max(out.sigma3_scalar, rel_dev(num / den, expected));
  }
  return out;
}

}  // namespace ybe
