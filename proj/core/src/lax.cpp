#include "ybe/lax.hpp"

namespace ybe {

std::array<cd, 4> weights(cd u, bool tilde, const ModularParams& mp) {
  const cd modulus = tilde ? 2.0 * mp.eta() : mp.tau();
  const cd arg = tilde ? 0.5 * mp.tau() : mp.eta();
  std::array<cd, 4> w;
  for (int a = 0; a < 4; ++a) {
    const cd den = theta(a + 1, arg, modulus, mp.prec());
    if (std::abs(den) < 1e-12) throw DomainError("weights: vanishing theta_{a+1} denominator");
    w[a] = theta(a + 1, u + arg, modulus, mp.prec()) / den;
  }
  return w;
}

CMatrix pauli(int a) {
  CMatrix s(2, 2);
  switch (a) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw DomainError("pauli: index must be in 0..3");
  }
  return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix baxter_r(cd u, bool tilde, const ModularParams& mp) {
  const auto w = weights(u, tilde, mp);
  CMatrix r = CMatrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a) r += w[a] * kron(pauli(a), pauli(a));
  return r;
}

OperatorMatrix lax_l(SpectralParams sp, LaxVariant variant, const ModularParams& mp) {
  const bool tilde = variant == LaxVariant::doub_tilde;
  const auto w = weights(sp.u, tilde, mp);
  const SpinParams spin = SpinParams::from_g(sp.g, mp);
  const auto S = tilde ? generators_S_tilde(sp.g, mp)
                       : generators_S(spin, variant == LaxVariant::doub, mp);
  OperatorMatrix l(2, 2);
  for (int a = 0; a < 4; ++a) {
    const CMatrix s = pauli(a);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (s(i, j) != cd(0.0)) l.at(i, j) = l.at(i, j) + S[a].scaled(w[a] * s(i, j));
  }
  return l;
}

OperatorMatrix lax_l_factorized(SpectralParams sp, LaxVariant variant,
                                const ModularParams& mp) {
  const bool tilde = variant == LaxVariant::doub_tilde;
  const PrecisionConfig prec = mp.prec();
  const cd coeff_mod = tilde ? mp.eta() : 0.5 * mp.tau();  // modulus of the lateral thetas
  const cd den_mod = tilde ? 2.0 * mp.eta() : mp.tau();    // modulus of theta1(2z)
  const cd u1 = sp.u1(), u2 = sp.u2();

  auto th = [coeff_mod, prec](int a, cd w) { return theta(a, w, coeff_mod, prec); };

  OperatorMatrix left(2, 2);
  left.at(0, 0) = DifferenceOperator::multiplication([=](cd z) {
    return safe_div(th(3, z - u1), theta(1, 2.0 * z, den_mod, prec));
  });
  left.at(0, 1) = DifferenceOperator::multiplication([=](cd z) {
    return safe_div(-th(3, z + u1), theta(1, 2.0 * z, den_mod, prec));
  });
  left.at(1, 0) = DifferenceOperator::multiplication([=](cd z) {
    return safe_div(-th(4, z - u1), theta(1, 2.0 * z, den_mod, prec));
  });
  left.at(1, 1) = DifferenceOperator::multiplication([=](cd z) {
    return safe_div(th(4, z + u1), theta(1, 2.0 * z, den_mod, prec));
  });

  const LatticeShift step = tilde ? LatticeShift{0, 1, 0} : LatticeShift{1, 0, 0};
  OperatorMatrix diag(2, 2);
  diag.at(0, 0) = DifferenceOperator::shift(step, mp);
  diag.at(1, 1) = DifferenceOperator::shift({-step.a, -step.b, -step.c}, mp);

  OperatorMatrix right(2, 2);
  right.at(0, 0) = DifferenceOperator::multiplication([=](cd z) { return th(4, z + u2); });
  right.at(0, 1) = DifferenceOperator::multiplication([=](cd z) { return th(3, z + u2); });
  right.at(1, 0) = DifferenceOperator::multiplication([=](cd z) { return th(4, z - u2); });
  right.at(1, 1) = DifferenceOperator::multiplication([=](cd z) { return th(3, z - u2); });

  OperatorMatrix l = mat_mul(mat_mul(left, diag), right);
  if (variant == LaxVariant::sklyanin) return l;
  const cd c = tilde ? 2.0 / mp.tau() : 1.0 / mp.eta();
  OperatorMatrix out(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.at(i, j) = gaussian_conjugate(l.at(i, j), c);
  return out;
}

double ybe_residual(const std::function<CMatrix(cd)>& r, cd u, cd v) {
  const CMatrix i2 = CMatrix::Identity(2, 2);
  auto embed12 = [&](const CMatrix& m) { return kron(m, i2); };
  auto embed23 = [&](const CMatrix& m) { return kron(i2, m); };
  auto embed13 = [&](const CMatrix& m) {
    CMatrix out = CMatrix::Zero(8, 8);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            for (int m2 = 0; m2 < 2; ++m2)
              out(4 * i + 2 * m2 + k, 4 * j + 2 * m2 + l) = m(2 * i + k, 2 * j + l);
    return out;
  };
  const CMatrix lhs = embed12(r(u - v)) * embed13(r(u)) * embed23(r(v));
  const CMatrix rhs = embed23(r(v)) * embed13(r(u)) * embed12(r(u - v));
  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

double operator_matrix_residual(const OperatorMatrix& a, const OperatorMatrix& b,
                                const ModularParams& mp, std::uint64_t seed, int points) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("operator_matrix_residual: shape mismatch");
  PointSampler sampler(seed);
  const auto fns = test_functions(mp);
  const auto zs = sampler.sample_zs(mp, points);
  double worst = 0.0;
  for (const auto& f : fns) {
    for (const cd z : zs) {
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
          double sa = 0.0, sb = 0.0;
          const cd va = a.at(i, j).apply(f, z, &sa);
          const cd vb = b.at(i, j).apply(f, z, &sb);
          worst = std::max(worst, std::abs(va - vb) / std::max({sa, sb, 1e-300}));
        }
    }
  }
  return worst;
}

double rll_residual(const CMatrix& r, const OperatorMatrix& lu, const OperatorMatrix& lv,
                    const ModularParams& mp, std::uint64_t seed, int points, bool twist) {
  OperatorMatrix a = lu, b = lv;
  if (twist) {
    const std::vector<cd> s3 = {1.0, 0.0, 0.0, -1.0};
    a = mat_mul_numeric(a, s3, 2);
    b = mat_mul_numeric(b, s3, 2);
  }
  // Operator products for both orders, indexed by (i j, k l): L(u)_{ij} L(v)_{kl}.
  std::vector<DifferenceOperator> uv(16), vu(16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          uv[8 * i + 4 * j + 2 * k + l] = compose(a.at(i, j), b.at(k, l));
          vu[8 * i + 4 * j + 2 * k + l] = compose(b.at(k, l), a.at(i, j));
        }

  PointSampler sampler(seed);
  const auto fns = test_functions(mp);
  const auto zs = sampler.sample_zs(mp, points);
  double worst = 0.0;
  for (const auto& f : fns) {
    for (const cd z : zs) {
      cd uvv[16], vuv[16];
      double uvs[16], vus[16];
      for (int t = 0; t < 16; ++t) {
        uvv[t] = uv[t].apply(f, z, &uvs[t]);
        vuv[t] = vu[t].apply(f, z, &vus[t]);
      }
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) {
              cd lhs = 0.0, rhs = 0.0;
              double sl = 0.0, sr = 0.0;
              for (int ip = 0; ip < 2; ++ip)
                for (int kp = 0; kp < 2; ++kp) {
                  const cd rw = r(2 * i + k, 2 * ip + kp);
                  lhs += rw * uvv[8 * ip + 4 * j + 2 * kp + l];
                  sl += std::abs(rw) * uvs[8 * ip + 4 * j + 2 * kp + l];
                  const cd rw2 = r(2 * ip + kp, 2 * j + l);
                  rhs += rw2 * vuv[8 * i + 4 * ip + 2 * k + kp];
                  sr += std::abs(rw2) * vus[8 * i + 4 * ip + 2 * k + kp];
                }
              worst = std::max(worst, std::abs(lhs - rhs) / std::max({sl, sr, 1e-300}));
            }
    }
  }
  return worst;
}

CMatrix restrict_to_basis(const OperatorMatrix& l, const BasisSet& basis,
                          const ModularParams& mp, std::uint64_t seed, double* residual) {
  const int dim = basis.rep.dim();
  CMatrix out(2 * dim, 2 * dim);
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double r = 0.0;
      const CMatrix m = matrix_rep(l.at(i, j), basis, mp, seed + 2 * i + j, &r);
      worst = std::max(worst, r);
      out.block(i * dim, j * dim, dim, dim) = m;
    }
  if (residual) *residual = worst;
  return out;
}

double rll_matrix_residual(const CMatrix& r, const CMatrix& lu, const CMatrix& lv, int dim) {
  // Total space aux1 (x) aux2 (x) V with V of the given dimension; lu, lv are
  // (2 dim) x (2 dim) with rows (i, k).
  const int n = 4 * dim;
  CMatrix l13 = CMatrix::Zero(n, n), l23 = CMatrix::Zero(n, n), r12 = CMatrix::Zero(n, n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      for (int m = 0; m < 2; ++m)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            l13(2 * dim * i + dim * m + k, 2 * dim * j + dim * m + l) =
                lu(dim * i + k, dim * j + l);
            l23(2 * dim * m + dim * i + k, 2 * dim * m + dim * j + l) =
                lv(dim * i + k, dim * j + l);
          }
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          for (int m = 0; m < dim; ++m)
            for (int m2 = 0; m2 < dim; ++m2)
              if (m == m2)
                r12(2 * dim * i + dim * k + m, 2 * dim * j + dim * l + m2) =
                    r(2 * i + k, 2 * j + l);
    }
  const CMatrix lhs = r12 * l13 * l23;
  const CMatrix rhs = l23 * l13 * r12;
  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

CMatrix lax_from_matrices(cd u, bool tilde, const std::array<CMatrix, 4>& mats,
                          const ModularParams& mp) {
  const auto w = weights(u, tilde, mp);
  const int dim = static_cast<int>(mats[0].rows());
  CMatrix out = CMatrix::Zero(2 * dim, 2 * dim);
  for (int a = 0; a < 4; ++a) out += w[a] * kron(pauli(a), mats[a]);
  return out;
}

double rll_two_space_residual(const CMatrix& r12, const CMatrix& l1, const CMatrix& l2,
                              int d1, int d2) {
  const int n = 2 * d1 * d2;
  auto idx = [&](int aux, int k1, int k2) { return d1 * d2 * aux + d2 * k1 + k2; };
  CMatrix l1f = CMatrix::Zero(n, n), l2f = CMatrix::Zero(n, n);
  CMatrix s3f = CMatrix::Zero(n, n), rf = CMatrix::Zero(n, n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k1 = 0; k1 < d1; ++k1)
        for (int j1 = 0; j1 < d1; ++j1)
          for (int k2 = 0; k2 < d2; ++k2) {
            l1f(idx(i, k1, k2), idx(j, j1, k2)) += l1(d1 * i + k1, d1 * j + j1);
          }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k2 = 0; k2 < d2; ++k2)
        for (int j2 = 0; j2 < d2; ++j2)
          for (int k1 = 0; k1 < d1; ++k1) {
            l2f(idx(i, k1, k2), idx(j, k1, j2)) += l2(d2 * i + k2, d2 * j + j2);
          }
  for (int i = 0; i < 2; ++i)
    for (int k1 = 0; k1 < d1; ++k1)
      for (int k2 = 0; k2 < d2; ++k2) {
        s3f(idx(i, k1, k2), idx(i, k1, k2)) = (i == 0) ? 1.0 : -1.0;
        for (int j1 = 0; j1 < d1; ++j1)
          for (int j2 = 0; j2 < d2; ++j2)
            rf(idx(i, k1, k2), idx(i, j1, j2)) = r12(d2 * k1 + k2, d2 * j1 + j2);
      }
  const CMatrix lhs = rf * l1f * s3f * l2f;
  const CMatrix rhs = l2f * s3f * l1f * rf;
  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
  return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

}  // namespace ybe
