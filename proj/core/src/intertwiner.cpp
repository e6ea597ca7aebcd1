#include "ybe/intertwiner.hpp"

#include <algorithm>

namespace ybe {

double DomainCheck::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& c : conditions) m = std::min(m, c.margin);
  return m;
}

void DomainCheck::require(double floor) const {
  for (const auto& c : conditions) {
    if (c.margin < floor)
      throw DomainError("domain condition violated: Im(" + c.name + ") = " +
                        std::to_string(c.margin) + " < " + std::to_string(floor));
  }
}

DifferenceOperator a_op(int k, cd g, const ModularParams& mp) {
  if (k != 3 && k != 4) throw DomainError("a_op: k must be 3 or 4");
  const PrecisionConfig prec = mp.prec();
  const cd tau = mp.tau(), eta = mp.eta();
  const cd c_a = std::exp(kPi * kI * eta) / mp.r_tau();
  Mero1 cplus = [=](cd z) {
    return c_a * safe_div(theta(k, z + g + eta, 0.5 * tau, prec),
                          theta(1, 2.0 * z, tau, prec));
  };
  Mero1 cminus = [=](cd z) {
    return -c_a * safe_div(theta(k, z - g - eta, 0.5 * tau, prec),
                           theta(1, 2.0 * z, tau, prec));
  };
  const auto op = DifferenceOperator::term({1, 0, 0}, cplus, mp) +
                  DifferenceOperator::term({-1, 0, 0}, cminus, mp);
  return gaussian_conjugate(op, 1.0 / eta);
}

DifferenceOperator b_op(int k, cd g, const ModularParams& mp) {
  if (k != 3 && k != 4) throw DomainError("b_op: k must be 3 or 4");
  const PrecisionConfig prec = mp.prec();
  const cd tau = mp.tau(), eta = mp.eta();
  const cd c_b = std::exp(0.5 * kPi * kI * tau) / mp.r_2eta();
  Mero1 cplus = [=](cd z) {
    return c_b * safe_div(theta(k, z + g + 0.5 * tau, eta, prec),
                          theta(1, 2.0 * z, 2.0 * eta, prec));
  };
  Mero1 cminus = [=](cd z) {
    return -c_b * safe_div(theta(k, z - g - 0.5 * tau, eta, prec),
                           theta(1, 2.0 * z, 2.0 * eta, prec));
  };
  const auto op = DifferenceOperator::term({0, 1, 0}, cplus, mp) +
                  DifferenceOperator::term({0, -1, 0}, cminus, mp);
  return gaussian_conjugate(op, 2.0 / tau);
}

DifferenceOperator m_lattice(int n, int m, bool half, const ModularParams& mp, int k,
                             LatticePath path) {
  if (n < 0 || m < 0) throw DomainError("m_lattice: n, m must be nonnegative");
  const PrecisionConfig prec = mp.prec();
  const cd tau = mp.tau(), eta = mp.eta();

  Mero1 divider = [=](cd z) {
    cd den = 1.0;
    for (int i = 0; i < m; ++i) den *= theta(k, z, eta, prec);
    for (int i = 0; i < n; ++i) den *= theta(k, z, 0.5 * tau, prec);
    return safe_div(cd(1.0), den);
  };
  DifferenceOperator op = DifferenceOperator::multiplication(divider);

  if (path == LatticePath::tau_first) {
    // B-chain from 0 to m tau/2, then A-chain up to n eta + m tau/2.
    for (int j = 0; j < m; ++j) op = compose(b_op(k, double(j) * 0.5 * tau, mp), op);
    for (int i = 0; i < n; ++i)
      op = compose(a_op(k, double(i) * eta + double(m) * 0.5 * tau, mp), op);
  } else {
    for (int i = 0; i < n; ++i) op = compose(a_op(k, double(i) * eta, mp), op);
    for (int j = 0; j < m; ++j)
      op = compose(b_op(k, double(n) * eta + double(j) * 0.5 * tau, mp), op);
  }
  if (half) op = compose(op, DifferenceOperator::shift({0, 0, 1}, mp));
  return op;
}

QuadResult periodic_quadrature(const Mero1& integrand, QuadratureConfig quad) {
  quad.validate();
  QuadResult out;
  cd prev = 0.0;
  for (int level = 0; level <= quad.max_doublings; ++level) {
    const int nodes = quad.points << level;
    cd sum = 0.0;
    double maxmag = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const cd v = integrand((j + 0.5) / double(nodes));
      sum += v;
      maxmag = std::max(maxmag, std::abs(v));
    }
    const cd value = sum / double(nodes);
    out.value = value;
    out.nodes = nodes;
    if (level > 0) {
      const double floor = std::max(std::abs(value), 1e-10 * maxmag);
      out.last_rel_diff = std::abs(value - prev) / std::max(floor, 1e-300);
      if (out.last_rel_diff <= quad.rel_tol) return out;
    }
    prev = value;
  }
  // max_doublings == 0 requests a single fixed-resolution pass.
  if (quad.max_doublings == 0) return out;
  throw PrecisionError("periodic_quadrature: node-doubling cap reached", out.last_rel_diff);
}

namespace {

// 1 / [Gamma(2x) Gamma(-2x)] via the reflection identity; regular on the
// contour, with the structural double zeros at x = 0, 1/2.
cd inv_gamma_pm2x(cd x, const ModularParams& mp) {
  const cd c = 2.0 * mp.eta() + mp.tau();
  return elliptic_gamma(2.0 * x + c, mp) * elliptic_gamma(-2.0 * x + c, mp);
}

}  // namespace

QuadResult m_integral(cd g, const Mero1& f, cd z, QuadratureConfig quad,
                      const ModularParams& mp) {
  DomainCheck domain{{{"-g+z", (-g + z).imag()}, {"-g-z", (-g - z).imag()}}};
  domain.require();
  const cd inv_gamma_m2g = elliptic_gamma_inv(-2.0 * g, mp);
  Mero1 integrand = [&, g, z](cd x) {
    return gamma_pm(z, x, -g, mp) * inv_gamma_m2g * inv_gamma_pm2x(x, mp) * f(x);
  };
  QuadResult out = periodic_quadrature(integrand, quad);
  out.value *= mp.kappa();
  out.domain = domain;
  return out;
}

double beta_integral_check(cd a, cd b, cd z1, cd z2, cd x, QuadratureConfig quad,
                           const ModularParams& mp, DomainCheck* domain) {
  const cd ettau = mp.eta() + 0.5 * mp.tau();
  DomainCheck dc{{{"-a+z1", (-a + z1).imag()},
                  {"-a-z1", (-a - z1).imag()},
                  {"-a+x", (-a + x).imag()},
                  {"-a-x", (-a - x).imag()},
                  {"-b+x", (-b + x).imag()},
                  {"-b-x", (-b - x).imag()},
                  {"a+b+z2+eta+tau/2", (a + b + z2 + ettau).imag()},
                  {"a+b-z2+eta+tau/2", (a + b - z2 + ettau).imag()}}};
  if (domain) *domain = dc;
  dc.require();

  const cd const_a = elliptic_gamma_inv(-2.0 * a, mp);
  const cd const_b = elliptic_gamma_inv(-2.0 * b, mp) * inv_gamma_pm2x(x, mp);
  Mero1 integrand = [&](cd z) {
    return gamma_pm(z, z1, -a, mp) * const_a * inv_gamma_pm2x(z, mp) *
           gamma_pm(z, z2, a + b + ettau, mp) * gamma_pm(x, z, -b, mp) * const_b;
  };
  const cd lhs = mp.kappa() * periodic_quadrature(integrand, quad).value;
  const cd rhs = gamma_pm(z1, z2, b + ettau, mp) * gamma_pm(x, z1, -a - b, mp) *
                 elliptic_gamma_inv(-2.0 * (a + b), mp) * inv_gamma_pm2x(x, mp) *
                 gamma_pm(x, z2, a + ettau, mp);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double star_triangle_check(cd alpha, cd beta, cd x, const Mero1& f,
                           const std::vector<cd>& z_ext, QuadratureConfig quad,
                           const ModularParams& mp, DomainCheck* domain) {
  const cd ettau = mp.eta() + 0.5 * mp.tau();
  DomainCheck dc{{{"-alpha", -alpha.imag()}}};
  for (const cd z : z_ext) {
    dc.conditions.push_back({"-beta+z", (-beta + z).imag()});
    dc.conditions.push_back({"-beta-z", (-beta - z).imag()});
    dc.conditions.push_back({"-alpha-beta+z", (-alpha - beta + z).imag()});
    dc.conditions.push_back({"-alpha-beta-z", (-alpha - beta - z).imag()});
  }
  if (domain) *domain = dc;
  dc.require();

  const cd inv_gamma_m2a = elliptic_gamma_inv(-2.0 * alpha, mp);
  const cd inv_gamma_m2b = elliptic_gamma_inv(-2.0 * beta, mp);
  const cd inv_gamma_m2ab = elliptic_gamma_inv(-2.0 * (alpha + beta), mp);

  // The x-dressed input of the left side and the dressed inner-operator
  // values of the right side are independent of the external point; share
  // them across the batch, per doubling level.
  double worst = 0.0;
  std::vector<cd> prev_lhs(z_ext.size()), prev_rhs(z_ext.size());
  bool have_prev = false;
  for (int level = 0; level <= quad.max_doublings; ++level) {
    const int nodes = quad.points << level;
    const QuadratureConfig inner{quad.points, quad.max_doublings, quad.rel_tol};
    std::vector<cd> h_vals(nodes), w_vals(nodes);
    for (int j = 0; j < nodes; ++j) {
      const cd y = (j + 0.5) / double(nodes);
      h_vals[j] = gamma_pm(x, y, beta + ettau, mp) * inv_gamma_pm2x(y, mp) * f(y);
      Mero1 inner_int = [&](cd w) {
        return gamma_pm(y, w, -alpha, mp) * inv_gamma_m2a * inv_gamma_pm2x(w, mp) * f(w);
      };
      const cd m_alpha = mp.kappa() * periodic_quadrature(inner_int, inner).value;
      w_vals[j] = gamma_pm(x, y, alpha + beta + ettau, mp) * inv_gamma_pm2x(y, mp) *
                  inv_gamma_m2b * m_alpha;
    }
    bool converged = have_prev;
    std::vector<cd> lhs(z_ext.size()), rhs(z_ext.size());
    for (std::size_t p = 0; p < z_ext.size(); ++p) {
      cd lsum = 0.0, rsum = 0.0;
      for (int j = 0; j < nodes; ++j) {
        const cd y = (j + 0.5) / double(nodes);
        lsum += gamma_pm(z_ext[p], y, -(alpha + beta), mp) * h_vals[j];
        rsum += gamma_pm(z_ext[p], y, -beta, mp) * w_vals[j];
      }
      lhs[p] = gamma_pm(x, z_ext[p], alpha + ettau, mp) * inv_gamma_m2ab * mp.kappa() *
               lsum / double(nodes);
      rhs[p] = mp.kappa() * rsum / double(nodes);
      if (have_prev) {
        converged = converged &&
                    rel_dev(lhs[p], prev_lhs[p]) <= quad.rel_tol &&
                    rel_dev(rhs[p], prev_rhs[p]) <= quad.rel_tol;
      }
    }
    if (converged) {
      for (std::size_t p = 0; p < z_ext.size(); ++p)
        worst = std::max(worst, rel_dev(lhs[p], rhs[p]));
      return worst;
    }
    prev_lhs = lhs;
    prev_rhs = rhs;
    have_prev = true;
  }
  throw PrecisionError("star_triangle_check: node-doubling cap reached", 0.0);
}

double star_triangle_check(cd alpha, cd beta, cd x, const Mero1& f, cd z_ext,
                           QuadratureConfig quad, const ModularParams& mp,
                           DomainCheck* domain) {
  return star_triangle_check(alpha, beta, x, f, std::vector<cd>{z_ext}, quad, mp, domain);
}

double inversion_check(int n, int m, const Mero1& f, cd z, QuadratureConfig quad,
                       const ModularParams& mp) {
  const cd g = double(n) * mp.eta() + double(m) * 0.5 * mp.tau();
  // The inverse pair commutes on even functions, and only the order with the
  // integral outermost keeps every pole sequence off the unit contour: taken
  // the other way round, the lattice shifts push Im(g +- w) through zero and
  // the plain contour integral loses the residue content.  Im(g +- z) > 0 at
  // the external point holds automatically for lattice g here.
  DomainCheck dc{{{"g+z", (g + z).imag()}, {"g-z", (g - z).imag()}}};
  dc.require();
  const DifferenceOperator lat = m_lattice(n, m, false, mp);
  Mero1 latf = [&](cd x) { return lat.apply(f, x); };

  auto value_at = [&](cd gs) {
    const cd inv_gamma_2g = elliptic_gamma_inv(2.0 * gs, mp);
    Mero1 integrand = [&, gs, inv_gamma_2g](cd x) {
      return gamma_pm(z, x, gs, mp) * inv_gamma_2g * inv_gamma_pm2x(x, mp) * latf(x);
    };
    return mp.kappa() * periodic_quadrature(integrand, quad).value;
  };

  cd value;
  if (n >= 1 && m >= 1) {
    // 2g sits on the zero lattice of the elliptic gamma function, so the
    // integral's normalization 1/Gamma(2g) is singular there.  The composite
    // value is analytic in the integral spin, so recover the lattice-point
    // value by averaging over a small circle (kills the O(eps..eps^3) terms).
    const double eps_detune = 0.005;
    value = 0.0;
    for (int k = 0; k < 4; ++k) {
      const cd omega = std::exp(0.5 * kPi * kI * double(k));
      value += value_at(g + eps_detune * omega);
    }
    value *= 0.25;
  } else {
    value = value_at(g);
  }
  return std::abs(value - f(z)) / std::abs(f(z));
}

double null_space_check(FiniteRep rep, const ModularParams& mp, std::uint64_t seed) {
  const DifferenceOperator op = m_lattice(rep.n + 1, rep.m + 1, rep.half, mp);
  PointSampler sampler(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const cd x = sampler.sample_z(mp);
    const cd z = sampler.sample_z(mp);
    Mero1 fx = [&, x](cd w) { return generating_function(rep, w, x, mp); };
    double scale = 0.0;
    const cd v = op.apply(fx, z, &scale);
    worst = std::max(worst, std::abs(v) / std::max(scale, 1e-300));
  }
  return worst;
}

double intertwining_check(int n, int m, bool half, bool tilde_half,
                          const ModularParams& mp, std::uint64_t seed) {
  const cd g = (half ? 0.5 : 0.0) + double(n) * mp.eta() + double(m) * 0.5 * mp.tau();
  const DifferenceOperator lat = m_lattice(n, m, half, mp);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    const DifferenceOperator s_plus =
        tilde_half ? generator_S_tilde(a, g, mp)
                   : generator_S(a, SpinParams::from_g(g, mp), true, mp);
    const DifferenceOperator s_minus =
        tilde_half ? generator_S_tilde(a, -g, mp)
                   : generator_S(a, SpinParams::from_g(-g, mp), true, mp);
    worst = std::max(worst, operator_identity_residual(compose(lat, s_plus),
                                                       compose(s_minus, lat), mp,
                                                       seed + a, 8));
  }
  return worst;
}

double contiguous_check(int k, int n, int m, bool b_direction, const ModularParams& mp,
                        std::uint64_t seed) {
  const PrecisionConfig prec = mp.prec();
  const cd g = double(n) * mp.eta() + double(m) * 0.5 * mp.tau();
  const DifferenceOperator mg = m_lattice(n, m, false, mp, k);
  if (!b_direction) {
    const auto lhs = compose(a_op(k, g, mp), mg);
    const auto rhs = compose(m_lattice(n + 1, m, false, mp, k),
                             DifferenceOperator::multiplication([=, &mp](cd z) {
                               return theta(k, z, 0.5 * mp.tau(), prec);
                             }));
    return operator_identity_residual(lhs, rhs, mp, seed, 8);
  }
  const auto lhs = compose(b_op(k, g, mp), mg);
  const auto rhs = compose(m_lattice(n, m + 1, false, mp, k),
                           DifferenceOperator::multiplication(
                               [=, &mp](cd z) { return theta(k, z, mp.eta(), prec); }));
  return operator_identity_residual(lhs, rhs, mp, seed, 8);
}

}  // namespace ybe
