#include "dbarlab/geometry/grids.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "dbarlab/csv.hpp"

namespace dbarlab {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
      }
      double dp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int k = 0; k < n; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
    }
    double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

S3Rule s3_product_rule(int n) {
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  S3Rule rule;
  rule.dirs.reserve(2 * n * n * n);
  rule.w.reserve(2 * n * n * n);
  const double pi = std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const double psi = (gx[i] + 1.0) * pi / 2.0;
    const double wpsi = gw[i] * (pi / 2.0) * std::sin(psi) * std::sin(psi);
    const double cpsi = std::cos(psi), spsi = std::sin(psi);
    for (int j = 0; j < n; ++j) {
      const double cth = gx[j];
      const double sth = std::sqrt(std::max(0.0, 1.0 - cth * cth));
      const double wth = gw[j];
      for (int k = 0; k < 2 * n; ++k) {
        const double phi = (k + 0.5) * pi / n;
        rule.dirs.push_back({cpsi, spsi * cth, spsi * sth * std::cos(phi), spsi * sth * std::sin(phi)});
        rule.w.push_back(wpsi * wth * (pi / n));
      }
    }
  }
  return rule;
}

BoundaryGrid build_boundary_grid(const ModelDomain& domain, double eps, int resolution) {
  if (resolution < 8) throw precondition_error("build_boundary_grid: resolution >= 8");
  const double level = -eps;

  S3Rule rule = s3_product_rule(resolution);
  const R4 ext = domain.extents();
  const double detA = ext[0] * ext[1] * ext[2] * ext[3];

  BoundaryGrid g;
  g.level = eps;
  g.anchor = domain.anchor();
  const std::size_t n = rule.dirs.size();
  g.x1.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    const R4& th = rule.dirs[i];
    R4 au{ext[0] * th[0], ext[1] * th[1], ext[2] * th[2], ext[3] * th[3]};
    const double an = norm(au);
    const R4 u = (1.0 / an) * au;
    // pushforward of the S^3 measure under theta -> A theta / |A theta|
    const double wdir = rule.w[i] * detA / (an * an * an * an);

    const double s = domain.radial_root(u, level);
    const C2 z = C2::from_r4(domain.anchor().to_r4() + s * u);
    auto [d1, d2] = domain.grad_rho(z);
    R4 grad{2.0 * d1.real(), -2.0 * d1.imag(), 2.0 * d2.real(), -2.0 * d2.imag()};
    const double gn = norm(grad);
    if (gn < 1e-14) throw degenerate_point_error("build_boundary_grid: vanishing gradient");
    const R4 nu = (1.0 / gn) * grad;
    const double cosg = dot(u, nu);
    if (cosg <= 1e-10) throw resolution_error("build_boundary_grid: ray nearly tangent to level set");

    g.x1.push_back(z.z1.real());
    g.y1.push_back(z.z1.imag());
    g.x2.push_back(z.z2.real());
    g.y2.push_back(z.z2.imag());
    g.w.push_back(wdir * s * s * s / cosg);
    g.nu1.push_back(nu[0]);
    g.nu2.push_back(nu[1]);
    g.nu3.push_back(nu[2]);
    g.nu4.push_back(nu[3]);
    g.g1r.push_back(d1.real());
    g.g1i.push_back(d1.imag());
    g.g2r.push_back(d2.real());
    g.g2i.push_back(d2.imag());
    // phi ^ omega pullback, orientation pinned by the ball dbar identity:
    // J1 = +2 (nu3 + i nu4), J2 = -2 (nu1 + i nu2)
    g.j1r.push_back(2.0 * nu[2]);
    g.j1i.push_back(2.0 * nu[3]);
    g.j2r.push_back(-2.0 * nu[0]);
    g.j2i.push_back(-2.0 * nu[1]);
  }
  for (double wi : g.w) g.area += wi;
  g.spacing = std::cbrt(g.area / static_cast<double>(g.size()));
  return g;
}

namespace {

void scan_cell(const ModelDomain& dom, const R4& center, const R4& h, int level, int max_level,
               VolumeGrid& out) {
  const C2 z = C2::from_r4(center);
  const double v = dom.rho(z);
  const double diag = 0.5 * norm(h);
  const double gn = norm(dom.grad_rho_real(z));
  const double margin = 1.2 * diag * std::max(gn, 1e-12);

  if (v < -margin || level == max_level) {
    if (v < 0.0) {
      out.x1.push_back(center[0]);
      out.y1.push_back(center[1]);
      out.x2.push_back(center[2]);
      out.y2.push_back(center[3]);
      out.w.push_back(h[0] * h[1] * h[2] * h[3]);
    }
    return;
  }
  if (v > margin) return;
  const R4 h2 = 0.5 * h;
  for (int m = 0; m < 16; ++m) {
    R4 c = center;
    for (int j = 0; j < 4; ++j) c[j] += ((m >> j) & 1 ? 0.25 : -0.25) * h[j];
    scan_cell(dom, c, h2, level + 1, max_level, out);
  }
}

}  // namespace

VolumeGrid build_volume_grid(const ModelDomain& domain, int resolution, int subdivide_levels) {
  if (resolution < 8) throw precondition_error("build_volume_grid: resolution >= 8");
  VolumeGrid g;
  const R4 a = domain.anchor().to_r4();
  const R4 ext = domain.extents();
  R4 lo, h;
  for (int j = 0; j < 4; ++j) {
    const double half = 1.25 * ext[j];
    lo[j] = a[j] - half;
    h[j] = 2.0 * half / resolution;
  }
  g.h0 = h;
  for (int i0 = 0; i0 < resolution; ++i0)
    for (int i1 = 0; i1 < resolution; ++i1)
      for (int i2 = 0; i2 < resolution; ++i2)
        for (int i3 = 0; i3 < resolution; ++i3) {
          R4 c{lo[0] + (i0 + 0.5) * h[0], lo[1] + (i1 + 0.5) * h[1], lo[2] + (i2 + 0.5) * h[2],
               lo[3] + (i3 + 0.5) * h[3]};
          scan_cell(domain, c, h, 0, subdivide_levels, g);
        }
  for (double wi : g.w) g.volume += wi;
  return g;
}

void export_boundary_grid_csv(const BoundaryGrid& g, std::ostream& os) {
  CsvWriter csv(os, {"x1", "y1", "x2", "y2", "weight", "nu1", "nu2", "nu3", "nu4", "jac_re", "jac_im"});
  for (std::size_t i = 0; i < g.size(); ++i)
    csv.row({g.x1[i], g.y1[i], g.x2[i], g.y2[i], g.w[i], g.nu1[i], g.nu2[i], g.nu3[i], g.nu4[i],
             g.j2r[i], g.j2i[i]});
}

void export_volume_grid_csv(const VolumeGrid& g, std::ostream& os) {
  CsvWriter csv(os, {"x1", "y1", "x2", "y2", "weight"});
  for (std::size_t i = 0; i < g.size(); ++i) csv.row({g.x1[i], g.y1[i], g.x2[i], g.y2[i], g.w[i]});
}

}  // namespace dbarlab
