#include "ybe/basis.hpp"

#include <algorithm>
#include <bit>

namespace ybe {

namespace {

// Integer power of a complex base.
cd ipow(cd base, int e) {
  cd r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Symmetrized product over index assignments: sum over all subsets S of
// {0..count-1} with |S| = n3 of prod_{r in S} th3(z + off_r) prod_{r not in S}
// th4(z + off_r), thetas at the given modulus.
cd sym_product(cd z, const std::vector<cd>& offsets, int n3, cd modulus,
               const PrecisionConfig& prec) {
  const int count = static_cast<int>(offsets.size());
  if (count == 0) return 1.0;
  cd sum = 0.0;
  for (unsigned mask = 0; mask < (1u << count); ++mask) {
    if (std::popcount(mask) != n3) continue;
    cd prod = 1.0;
    for (int r = 0; r < count; ++r) {
      const int a = (mask >> r) & 1u ? 3 : 4;
      prod *= theta(a, z + offsets[r], modulus, prec);
    }
    sum += prod;
  }
  return sum;
}

}  // namespace

BasisSet phi_basis(FiniteRep rep, const ModularParams& mp) {
  BasisSet basis{rep, BasisKind::phi, {}};
  const cd half_tau = 0.5 * mp.tau();
  const cd eta = mp.eta();
  const PrecisionConfig prec = mp.prec();
  for (int j = 0; j <= rep.n; ++j) {
    for (int l = 0; l <= rep.m; ++l) {
      const int n = rep.n, m = rep.m;
      basis.funcs.push_back([=](cd z) {
        return ipow(theta(3, z, half_tau, prec), j) * ipow(theta(4, z, half_tau, prec), n - j) *
               ipow(theta(3, z, eta, prec), l) * ipow(theta(4, z, eta, prec), m - l);
      });
    }
  }
  return basis;
}

BasisSet psi_basis(FiniteRep rep, const ModularParams& mp) {
  BasisSet basis{rep, BasisKind::psi, {}};
  const cd half_tau = 0.5 * mp.tau();
  const cd eta = mp.eta();
  const PrecisionConfig prec = mp.prec();
  std::vector<cd> eta_offsets, tau_offsets;
  for (int r = 0; r < rep.n; ++r) eta_offsets.push_back(double(rep.n - 1 - 2 * r) * eta);
  for (int s = 0; s < rep.m; ++s) tau_offsets.push_back(double(rep.m - 1 - 2 * s) * half_tau);
  for (int j = 0; j <= rep.n; ++j) {
    for (int l = 0; l <= rep.m; ++l) {
      basis.funcs.push_back([=](cd z) {
        return sym_product(z, eta_offsets, j, half_tau, prec) *
               sym_product(z, tau_offsets, l, eta, prec);
      });
    }
  }
  return basis;
}

BasisSet sklyanin_basis(int n, const ModularParams& mp) {
  BasisSet basis = phi_basis(FiniteRep{n, 0, false}, mp);
  basis.kind = BasisKind::sklyanin;
  return basis;
}

cd c_nm(FiniteRep rep, const ModularParams& mp) {
  const int n = rep.n, m = rep.m;
  const cd phase = std::exp(kPi * kI * (double(n) * (1.0 - double(m) * m) * 0.5 * mp.tau() +
                                        double(m) * (1.0 - double(n) * n) * mp.eta()));
  return ipow(cd(-0.5), n + m) * ipow(mp.r_tau(), 2 * n) * ipow(mp.r_2eta(), 2 * m) * phase;
}

cd kernel_expansion_constant(FiniteRep rep, int j, int l, const ModularParams& mp) {
  const int sgn = ((rep.m * (rep.n - j) + rep.n * (rep.m - l)) % 2) ? -1 : 1;
  return double(sgn) * c_nm(rep, mp);
}

cd generating_function(FiniteRep rep, cd z, cd x, const ModularParams& mp, GfPath path) {
  if (path == GfPath::gamma_product) {
    return gamma_pm(z, x, rep.g(mp), mp);
  }
  // The half-lattice generating function equals the integer-lattice one at
  // x -> x + 1/2 (the elliptic gamma function is 1-periodic), which permutes
  // th3 and th4 in the x arguments.
  const cd xs = rep.half ? x + 0.5 : x;
  const cd half_tau = 0.5 * mp.tau();
  const cd eta = mp.eta();
  const PrecisionConfig prec = mp.prec();
  const double sm = (rep.m % 2) ? -1.0 : 1.0;
  const double sn = (rep.n % 2) ? -1.0 : 1.0;
  cd prod = c_nm(rep, mp);
  for (int r = 0; r < rep.n; ++r) {
    const cd xr = xs + double(rep.n - 1 - 2 * r) * eta;
    prod *= theta(3, z, half_tau, prec) * theta(4, xr, half_tau, prec) +
            sm * theta(4, z, half_tau, prec) * theta(3, xr, half_tau, prec);
  }
  for (int s = 0; s < rep.m; ++s) {
    const cd ys = xs + double(rep.m - 1 - 2 * s) * half_tau;
    prod *= theta(3, z, eta, prec) * theta(4, ys, eta, prec) +
            sn * theta(4, z, eta, prec) * theta(3, ys, eta, prec);
  }
  return prod;
}

namespace {

struct FitGrid {
  std::vector<cd> fit_points, val_points;
  CMatrix A;  // sample matrix at fit points
};

FitGrid make_grid(const BasisSet& basis, const ModularParams& mp, std::uint64_t seed) {
  const int dim = basis.rep.dim();
  PointSampler sampler(seed);
  FitGrid grid;
  grid.fit_points = sampler.sample_zs(mp, 2 * dim);
  grid.val_points = sampler.sample_zs(mp, dim);
  grid.A.resize(2 * dim, dim);
  for (int p = 0; p < 2 * dim; ++p)
    for (int k = 0; k < dim; ++k) grid.A(p, k) = basis.funcs[k](grid.fit_points[p]);
  return grid;
}

}  // namespace

FitResult fit_in_basis(const Mero1& f, const BasisSet& basis, const ModularParams& mp,
                       std::uint64_t seed) {
  const int dim = basis.rep.dim();
  const FitGrid grid = make_grid(basis, mp, seed);

  Eigen::JacobiSVD<CMatrix> svd(grid.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond =
      svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  if (cond > 1e10) throw FitError("fit_in_basis: sample matrix ill-conditioned");

  CVector rhs(2 * dim);
  double scale = 0.0;
  for (int p = 0; p < 2 * dim; ++p) {
    rhs(p) = f(grid.fit_points[p]);
    scale = std::max(scale, std::abs(rhs(p)));
  }
  const CVector coeffs = svd.solve(rhs);

  double max_dev = 0.0;
  for (const cd zv : grid.val_points) {
    cd fit = 0.0;
    for (int k = 0; k < dim; ++k) fit += coeffs(k) * basis.funcs[k](zv);
    const cd fv = f(zv);
    scale = std::max(scale, std::abs(fv));
    max_dev = std::max(max_dev, std::abs(fv - fit));
  }
  return {coeffs, max_dev / std::max(scale, 1e-300), cond, max_dev, scale};
}

int basis_rank(const BasisSet& basis, const ModularParams& mp, std::uint64_t seed) {
  const FitGrid grid = make_grid(basis, mp, seed);
  Eigen::JacobiSVD<CMatrix> svd(grid.A);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  return rank;
}

InterbasisResult interbasis_matrix(FiniteRep rep, const ModularParams& mp, std::uint64_t seed) {
  const BasisSet phi = phi_basis(rep, mp);
  const BasisSet psi = psi_basis(rep, mp);
  const int dim = rep.dim();
  InterbasisResult out;
  out.C.resize(dim, dim);
  out.max_fit_residual = 0.0;
  for (int j = 0; j < dim; ++j) {
    const FitResult fit = fit_in_basis(psi.funcs[j], phi, mp, seed);
    out.C.row(j) = fit.coeffs.transpose();
    out.max_fit_residual = std::max(out.max_fit_residual, fit.residual);
  }

  // K(z,x) = sum C'_{jl} phi_{jl}(z) psi_{n-j,m-l}(x) at seeded points.
  PointSampler sampler(seed + 1);
  out.kernel_residual = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const cd z = sampler.sample_z(mp);
    const cd x = sampler.sample_z(mp);
    const cd lhs = generating_function(rep, z, x, mp, GfPath::gamma_product);
    cd rhs = 0.0;
    for (int j = 0; j <= rep.n; ++j)
      for (int l = 0; l <= rep.m; ++l) {
        // On the half lattice the psi index is unflipped: shifting x by 1/2
        // permutes th3 and th4, so psi_{n-j,m-l}(x + 1/2) = psi_{j,l}(x).
        const int pj = rep.half ? j : rep.n - j;
        const int pl = rep.half ? l : rep.m - l;
        rhs += kernel_expansion_constant(rep, j, l, mp) * phi.funcs[rep.flat(j, l)](z) *
               psi.funcs[rep.flat(pj, pl)](x);
      }
    out.kernel_residual = std::max(out.kernel_residual, rel_dev(lhs, rhs));
  }
  return out;
}

}  // namespace ybe
