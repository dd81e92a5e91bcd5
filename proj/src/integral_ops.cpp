#include "dbarlab/operators/integral_ops.hpp"

#include <cmath>
#include <numbers>

#include "dbarlab/kernels/support.hpp"

namespace dbarlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNorm = 1.0 / (4.0 * kPi * kPi);

// Project z onto {rho = -level} along the local normal direction.
ModelDomain::BoundaryHit project_to_level(const ModelDomain& dom, const C2& z, double level) {
  if (level == 0.0) return dom.project_to_boundary(z);
  // root of rho - (-level) along the gradient direction, then refine
  C2 p = z;
  for (int sweep = 0; sweep < 3; ++sweep) {
    const double v = dom.rho(p) + level;
    if (std::abs(v) < 1e-13) break;
    R4 g = dom.grad_rho_real(p);
    const double gn = norm(g);
    if (gn < 1e-14) throw degenerate_point_error("project_to_level: vanishing gradient");
    const R4 dir = (1.0 / gn) * g;
    auto val = [&](double s) { return dom.rho(C2::from_r4(p.to_r4() + s * dir)) + level; };
    const double sgn = v < 0.0 ? 1.0 : -1.0;
    double lo = 0.0, hi = sgn * std::abs(v) / gn;
    int guard = 0;
    while (val(hi) * v > 0.0) {
      lo = hi;
      hi *= 1.7;
      if (++guard > 70) throw geometry_error("project_to_level: no level set along normal");
    }
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (val(mid) * v > 0.0 ? lo : hi) = mid;
    }
    p = C2::from_r4(p.to_r4() + (0.5 * (lo + hi)) * dir);
  }
  ModelDomain::BoundaryHit hit;
  hit.point = p;
  R4 g = dom.grad_rho_real(p);
  hit.normal = (1.0 / norm(g)) * g;
  hit.signed_dist = dist(z, p) * (dom.rho(z) + level < 0.0 ? 1.0 : -1.0);
  return hit;
}

// Local re-quadrature of the cap of the level set around hit.point, weighted
// by the cutoff complement (1 - mu). kernel(node) supplies H with either slot
// bound; the surface measure uses the tangent-graph identity
// dsigma = r^2 dr dS2 / <nu(node), nu0>.
cplx patch_integral(const ModelDomain& dom, const Form01& phi, double level,
                    const ModelDomain::BoundaryHit& hit, double radius,
                    const std::function<cplx(const C2&, const cplx&)>& kernel_times_dens,
                    const OperatorOptions& opts, double inner_scale) {
  const R4 nu0 = hit.normal;
  // tangent frame by Gram-Schmidt against nu0
  R4 frame[3];
  int have = 0;
  for (int axis = 0; axis < 4 && have < 3; ++axis) {
    R4 v{0, 0, 0, 0};
    v[axis] = 1.0;
    v = v - dot(v, nu0) * nu0;
    for (int k = 0; k < have; ++k) v = v - dot(v, frame[k]) * frame[k];
    const double n = norm(v);
    if (n > 1e-6) frame[have++] = (1.0 / n) * v;
  }
  if (have < 3) throw geometry_error("patch_integral: degenerate tangent frame");

  std::vector<double> gx, gw;
  gauss_legendre(opts.patch_theta, gx, gw);

  const double r_min = std::max(inner_scale, radius / 400.0);
  const double log_ratio = std::log(radius / r_min);
  const int shells = opts.patch_shells;

  cplx acc{0, 0};
  for (int s = 0; s < shells; ++s) {
    const double r = r_min * std::exp((s + 0.5) / shells * log_ratio);
    const double dr = r * log_ratio / shells;
    for (int it = 0; it < opts.patch_theta; ++it) {
      const double ct = gx[it];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int ip = 0; ip < opts.patch_phi; ++ip) {
        const double ph = (ip + 0.5) * 2.0 * kPi / opts.patch_phi;
        const double wdir = gw[it] * (2.0 * kPi / opts.patch_phi);
        const R4 u = ct * frame[0] + (st * std::cos(ph)) * frame[1] + (st * std::sin(ph)) * frame[2];

        // project the chart point back to the level set along nu0
        const R4 y = hit.point.to_r4() + r * u;
        auto val = [&](double t) { return dom.rho(C2::from_r4(y + t * nu0)) + level; };
        double t0 = 0.0, v0 = val(0.0);
        double step = std::abs(v0) / std::max(norm(dom.grad_rho_real(C2::from_r4(y))), 1e-12) + 1e-14;
        double lo = t0, hi = v0 < 0.0 ? step : -step;
        int guard = 0;
        while (val(hi) * v0 > 0.0) {
          lo = hi;
          hi *= 1.7;
          if (++guard > 60) throw resolution_error("patch_integral: projection lost the level set");
        }
        if (std::abs(hi) > 2.0 * radius) throw resolution_error("patch_integral: chart too curved");
        for (int i = 0; i < 60; ++i) {
          const double mid = 0.5 * (lo + hi);
          (val(mid) * v0 > 0.0 ? lo : hi) = mid;
        }
        const C2 node = C2::from_r4(y + (0.5 * (lo + hi)) * nu0);

        auto [d1, d2] = dom.grad_rho(node);
        R4 grad{2.0 * d1.real(), -2.0 * d1.imag(), 2.0 * d2.real(), -2.0 * d2.imag()};
        const double gn = norm(grad);
        const R4 nu = (1.0 / gn) * grad;
        const double cosg = dot(nu, nu0);
        if (cosg < 0.35) throw resolution_error("patch_integral: chart too curved");

        const double mu = radial_cut(dist(node, hit.point) / radius);
        if (mu >= 1.0) continue;
        const double w = r * r * dr * wdir / cosg * (1.0 - mu);
        // J1 = +2(nu3 + i nu4), J2 = -2(nu1 + i nu2)
        const cplx j1{2.0 * nu[2], 2.0 * nu[3]};
        const cplx j2{-2.0 * nu[0], -2.0 * nu[1]};
        const cplx dens = phi.eval1(node) * j1 + phi.eval2(node) * j2;
        acc += w * kernel_times_dens(node, dens);
      }
    }
  }
  return acc;
}

cplx boundary_sum_with_near(const PreparedBoundary& pb, const C2& eval_point,
                            bool second_slot, const C2& first_slot_p, const OperatorOptions& opts) {
  const ModelDomain& dom = *pb.domain;
  const BoundaryGrid& g = *pb.grid;

  // kernel bound to the appropriate slot
  cplx gp1{0, 0}, gp2{0, 0};
  if (!second_slot) {
    auto gg = dom.grad_rho(first_slot_p);
    gp1 = gg.first;
    gp2 = gg.second;
  }
  auto plain = [&](const reduce::Cut& cut) {
    return second_slot ? reduce::henkin_sum_second(pb.soa(), pb.dens(), eval_point, cut)
                       : reduce::henkin_sum_first(pb.soa(), pb.dens(), first_slot_p, gp1, gp2, cut);
  };

  // distance from the kernel's singular locus: the grid surface
  const C2 probe = second_slot ? eval_point : first_slot_p;
  auto hit = project_to_level(dom, probe, g.level);
  const double d = std::abs(hit.signed_dist);

  if (d >= opts.near_threshold * g.spacing || !opts.allow_near_eval) {
    if (d < 1.0 * g.spacing && !opts.allow_near_eval)
      throw resolution_error("boundary operator: evaluation point within one node spacing of the grid");
    reduce::Cut nocut;
    return kNorm * plain(nocut);
  }

  double radius = opts.patch_radius_cells * g.spacing;
  for (int attempt = 0; attempt < 5; ++attempt) {
    try {
      reduce::Cut cut{hit.point.to_r4(), radius};
      const cplx global = plain(cut);
      auto ker = [&](const C2& node, const cplx& dens) -> cplx {
        const cplx hv = second_slot ? kernel_h(dom, node, eval_point) : kernel_h(dom, first_slot_p, node);
        return hv * dens;
      };
      const cplx local =
          patch_integral(dom, pb.phi, g.level, hit, radius, ker, opts, std::max(d / 8.0, radius / 400.0));
      return kNorm * (global + local);
    } catch (const resolution_error&) {
      radius *= 0.6;  // curved chart: shrink the cap and retry
      if (radius < std::max(2.0 * d, 0.35 * g.spacing)) throw;
    }
  }
  throw resolution_error("boundary operator: near-evaluation failed to converge");
}

}  // namespace

PreparedBoundary prepare_boundary(const ModelDomain& domain, const BoundaryGrid& grid, Form01 phi) {
  PreparedBoundary pb;
  pb.domain = &domain;
  pb.grid = &grid;
  pb.phi = std::move(phi);
  const std::size_t n = grid.size();
  pb.dens_re.resize(n);
  pb.dens_im.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const C2 node = grid.node(i);
    const cplx d = (pb.phi.eval1(node) * grid.jac1(i) + pb.phi.eval2(node) * grid.jac2(i)) * grid.w[i];
    pb.dens_re[i] = d.real();
    pb.dens_im[i] = d.imag();
  }
  return pb;
}

PreparedVolume prepare_volume(const ModelDomain& domain, const VolumeGrid& grid, Form01 phi,
                              const OperatorOptions& opts) {
  PreparedVolume pv;
  pv.domain = &domain;
  pv.grid = &grid;
  pv.phi = std::move(phi);
  const std::size_t n = grid.size();
  pv.p1r.resize(n);
  pv.p1i.resize(n);
  pv.p2r.resize(n);
  pv.p2i.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const C2 node = grid.node(i);
    const cplx p1 = pv.phi.eval1(node) * grid.w[i];
    const cplx p2 = pv.phi.eval2(node) * grid.w[i];
    pv.p1r[i] = p1.real();
    pv.p1i[i] = p1.imag();
    pv.p2r[i] = p2.real();
    pv.p2i[i] = p2.imag();
  }
  for (int j = 0; j < 4; ++j) pv.semi_axes[j] = opts.rcut_cells * grid.h0[j];

  // M_jj = I_eta * int_{S^3} |theta_j|^2 / ||S theta||^2 dsigma
  S3Rule rule = s3_product_rule(16);
  double m11 = 0.0, m22 = 0.0;
  for (std::size_t i = 0; i < rule.dirs.size(); ++i) {
    const R4& th = rule.dirs[i];
    double s2 = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double q = th[j] / pv.semi_axes[j];
      s2 += q * q;
    }
    m11 += rule.w[i] * (th[0] * th[0] + th[1] * th[1]) / s2;
    m22 += rule.w[i] * (th[2] * th[2] + th[3] * th[3]) / s2;
  }
  pv.m11 = kRadialCutMoment * m11;
  pv.m22 = kRadialCutMoment * m22;
  return pv;
}

cplx op_h_boundary(const PreparedBoundary& pb, const C2& z, const OperatorOptions& opts) {
  pb.domain->require_in_chart(z);
  return boundary_sum_with_near(pb, z, true, C2{}, opts);
}

cplx op_h_first_slot(const PreparedBoundary& pb, const C2& p, const OperatorOptions& opts) {
  pb.domain->require_in_chart(p);
  return boundary_sum_with_near(pb, C2{}, false, p, opts);
}

cplx op_k_volume(const PreparedVolume& pv, const C2& z, const OperatorOptions& opts) {
  const ModelDomain& dom = *pv.domain;
  dom.require_in_chart(z);

  const double sa_max = std::max(std::max(pv.semi_axes[0], pv.semi_axes[1]),
                                 std::max(pv.semi_axes[2], pv.semi_axes[3]));
  const double gn = std::max(norm(dom.grad_rho_real(z)), 1e-12);
  const double d = std::abs(dom.rho(z)) / gn;
  const double tau = std::min(1.0, std::max(0.8 * d / sa_max, 1e-3));

  R4 inv_axes;
  for (int j = 0; j < 4; ++j) inv_axes[j] = 1.0 / (tau * pv.semi_axes[j]);
  const cplx sum = reduce::bm_volume_sum(pv.soa(), z, inv_axes);

  // compensation for the smoothly excluded ellipsoid
  auto wirt = [&](const std::function<cplx(const C2&)>& f, int slot) -> cplx {
    if (!f) return {0, 0};
    const double h = 1e-5;
    C2 ex = slot == 1 ? C2{{1, 0}, {0, 0}} : C2{{0, 0}, {1, 0}};
    C2 ey = slot == 1 ? C2{{0, 1}, {0, 0}} : C2{{0, 0}, {0, 1}};
    const cplx fx = (f(z + h * ex) - f(z - h * ex)) / (2.0 * h);
    const cplx fy = (f(z + h * ey) - f(z - h * ey)) / (2.0 * h);
    return 0.5 * (fx - cplx(0, 1) * fy);
  };
  const cplx div = pv.m11 * tau * tau * wirt(pv.phi.c1, 1) + pv.m22 * tau * tau * wirt(pv.phi.c2, 2);
  return (sum - div) / (kPi * kPi);
}

SolutionField henkin_solve(const ModelDomain& domain, const BoundaryGrid& grid,
                           const VolumeGrid& vgrid, const Form01& phi, const OperatorOptions& opts) {
  // dbar-closedness gate at a few interior nodes
  double worst = 0.0, sup = 0.0;
  const std::size_t step = std::max<std::size_t>(1, vgrid.size() / 17);
  for (std::size_t i = 0; i < vgrid.size(); i += step) {
    const C2 z = vgrid.node(i);
    worst = std::max(worst, dbar_closed_residual(phi, z));
    sup = std::max(sup, phi.magnitude(z));
  }
  if (worst > opts.closedness_tol * (1.0 + sup))
    throw data_error("henkin_solve: phi is not dbar-closed (FD residual " + std::to_string(worst) + ")");

  auto pb = std::make_shared<PreparedBoundary>(prepare_boundary(domain, grid, phi));
  auto pv = std::make_shared<PreparedVolume>(prepare_volume(domain, vgrid, phi, opts));
  SolutionField u;
  u.provenance = Provenance::HenkinInterior;
  u.evaluator = [pb, pv, opts](const C2& z) {
    return op_h_boundary(*pb, z, opts) + op_k_volume(*pv, z, opts);
  };
  return u;
}

cplx op_h_plus(const PreparedBoundary& pb, const C2& z, double eps, const OperatorOptions& opts) {
  if (eps <= 0.0) throw precondition_error("op_h_plus: eps > 0 required");
  if (!opts.allow_near_eval && eps < 2.0 * pb.grid->spacing)
    throw resolution_error("op_h_plus: eps below the resolution floor");
  auto hit = pb.domain->project_to_boundary(z);
  const C2 zin = C2::from_r4(hit.point.to_r4() - eps * hit.normal);
  return boundary_sum_with_near(pb, zin, true, C2{}, opts);
}

cplx op_h_minus(const PreparedBoundary& pb, const C2& z, double eps, const OperatorOptions& opts) {
  if (eps <= 0.0) throw precondition_error("op_h_minus: eps > 0 required");
  if (!opts.allow_near_eval && eps < 2.0 * pb.grid->spacing)
    throw resolution_error("op_h_minus: eps below the resolution floor");
  auto hit = pb.domain->project_to_boundary(z);
  const C2 zout = C2::from_r4(hit.point.to_r4() + eps * hit.normal);
  return boundary_sum_with_near(pb, C2{}, false, zout, opts);
}

double compatibility_check(const PreparedBoundary& pb, int degree) {
  const BoundaryGrid& g = *pb.grid;
  double worst = 0.0;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      cplx acc{0, 0};
      for (std::size_t i = 0; i < g.size(); ++i) {
        const C2 node = g.node(i);
        cplx mono{1, 0};
        for (int q = 0; q < a; ++q) mono *= node.z1;
        for (int q = 0; q < b; ++q) mono *= node.z2;
        acc += mono * cplx{pb.dens_re[i], pb.dens_im[i]};
      }
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

cplx dbar_b_solve(const PreparedBoundary& pb, const C2& z, double eps, double compat_tol,
                  const OperatorOptions& opts, bool richardson) {
  if (compat_tol >= 0.0) {
    const double pairing = compatibility_check(pb);
    if (pairing > compat_tol)
      throw data_error("dbar_b_solve: compatibility pairing " + std::to_string(pairing) +
                       " exceeds tolerance");
  }
  auto once = [&](double e) { return op_h_plus(pb, z, e, opts) - op_h_minus(pb, z, e, opts); };
  if (!richardson) return once(eps);
  const cplx u1 = once(eps), u2 = once(eps / 2.0);
  return 2.0 * u2 - u1;
}

double lp_norm(const BoundaryGrid& grid, const std::vector<cplx>& values, double p) {
  if (values.size() != grid.size()) throw data_error("lp_norm: values/grid size mismatch");
  if (p == std::numeric_limits<double>::infinity()) {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (p < 1.0) throw precondition_error("lp_norm: p >= 1 required");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += std::pow(std::abs(values[i]), p) * grid.w[i];
  return std::pow(s, 1.0 / p);
}

double gain_envelope_g(const ModelDomain& domain, double s) {
  const double fstar = domain.f_type().inverse(s);
  const double root = std::sqrt(fstar);
  if (domain.setting() == Setting::ComplexModel) return root;
  return root * std::abs(std::log(root));
}

GradientProbe gradient_probe(const PreparedBoundary& pb, const C2& x, double s, int side,
                             double phi_sup, const OperatorOptions& opts) {
  if (s < 2.0 * pb.grid->spacing && !opts.allow_near_eval)
    throw resolution_error("gradient_probe: offset below the resolution floor");
  auto hit = pb.domain->project_to_boundary(x);
  const C2 z0 = C2::from_r4(hit.point.to_r4() + (side >= 0 ? -s : s) * hit.normal);

  auto eval = [&](const C2& zz) {
    return side >= 0 ? op_h_boundary(pb, zz, opts) : op_h_first_slot(pb, zz, opts);
  };
  const double h = s / 8.0;
  double grad2 = 0.0;
  for (int axis = 0; axis < 4; ++axis) {
    R4 e{0, 0, 0, 0};
    e[axis] = h;
    const C2 zp = C2::from_r4(z0.to_r4() + e), zm = C2::from_r4(z0.to_r4() - e);
    grad2 += std::norm((eval(zp) - eval(zm)) / (2.0 * h));
  }
  GradientProbe out;
  out.observed = std::sqrt(grad2);
  out.envelope = gain_envelope_g(*pb.domain, s) / s * phi_sup;
  return out;
}

ShawCheck shaw_identity_check(const PreparedBoundary& pb, const PreparedVolume& pv, const C2& z,
                              const OperatorOptions& opts) {
  ShawCheck out;
  out.k_volume = op_k_volume(pv, z, opts);
  out.k_boundary = -op_h_first_slot(pb, z, opts);
  out.abs_diff = std::abs(out.k_volume - out.k_boundary);
  return out;
}

}  // namespace dbarlab
