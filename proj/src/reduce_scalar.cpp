#include <cmath>

#include "dbarlab/simd/reduce.hpp"

namespace dbarlab::reduce::scalar {

namespace {

inline double cut_factor(const Cut& cut, double x1, double y1, double x2, double y2) {
  if (cut.radius <= 0.0) return 1.0;
  const double dx0 = x1 - cut.center[0];
  const double dx1 = y1 - cut.center[1];
  const double dx2 = x2 - cut.center[2];
  const double dx3 = y2 - cut.center[3];
  const double u = std::sqrt(dx0 * dx0 + dx1 * dx1 + dx2 * dx2 + dx3 * dx3) / cut.radius;
  return radial_cut(u);
}

}  // namespace

cplx henkin_sum_second(const BoundarySoA& g, const DensitySoA& dens, const C2& z, const Cut& cut) {
  const double zx1 = z.z1.real(), zy1 = z.z1.imag(), zx2 = z.z2.real(), zy2 = z.z2.imag();
  double accr = 0.0, acci = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double d1r = g.x1[i] - zx1, d1i = g.y1[i] - zy1;
    const double d2r = g.x2[i] - zx2, d2i = g.y2[i] - zy2;
    const double g1r = g.g1r[i], g1i = g.g1i[i], g2r = g.g2r[i], g2i = g.g2i[i];

    const double phir = g1r * d1r - g1i * d1i + g2r * d2r - g2i * d2i;
    const double phii = g1r * d1i + g1i * d1r + g2r * d2i + g2i * d2r;
    const double r2 = d1r * d1r + d1i * d1i + d2r * d2r + d2i * d2i;
    // num = g1 conj(d2) - g2 conj(d1)
    const double numr = g1r * d2r + g1i * d2i - g2r * d1r - g2i * d1i;
    const double numi = g1i * d2r - g1r * d2i - g2i * d1r + g2r * d1i;

    const double denr = phir * r2, deni = phii * r2;
    const double den2 = denr * denr + deni * deni;
    if (den2 < 1e-280) continue;
    const double inv = 1.0 / den2;
    const double hr = (numr * denr + numi * deni) * inv;
    const double hi = (numi * denr - numr * deni) * inv;

    const double c = cut_factor(cut, g.x1[i], g.y1[i], g.x2[i], g.y2[i]);
    const double dr = dens.re[i] * c, di = dens.im[i] * c;
    accr += hr * dr - hi * di;
    acci += hr * di + hi * dr;
  }
  return {accr, acci};
}

cplx henkin_sum_first(const BoundarySoA& g, const DensitySoA& dens, const C2& p, cplx gp1, cplx gp2,
                      const Cut& cut) {
  const double px1 = p.z1.real(), py1 = p.z1.imag(), px2 = p.z2.real(), py2 = p.z2.imag();
  const double a1r = gp1.real(), a1i = gp1.imag(), a2r = gp2.real(), a2i = gp2.imag();
  double accr = 0.0, acci = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    // d = p - zeta
    const double d1r = px1 - g.x1[i], d1i = py1 - g.y1[i];
    const double d2r = px2 - g.x2[i], d2i = py2 - g.y2[i];

    const double phir = a1r * d1r - a1i * d1i + a2r * d2r - a2i * d2i;
    const double phii = a1r * d1i + a1i * d1r + a2r * d2i + a2i * d2r;
    const double r2 = d1r * d1r + d1i * d1i + d2r * d2r + d2i * d2i;
    const double numr = a1r * d2r + a1i * d2i - a2r * d1r - a2i * d1i;
    const double numi = a1i * d2r - a1r * d2i - a2i * d1r + a2r * d1i;

    const double denr = phir * r2, deni = phii * r2;
    const double den2 = denr * denr + deni * deni;
    if (den2 < 1e-280) continue;
    const double inv = 1.0 / den2;
    const double hr = (numr * denr + numi * deni) * inv;
    const double hi = (numi * denr - numr * deni) * inv;

    const double c = cut_factor(cut, g.x1[i], g.y1[i], g.x2[i], g.y2[i]);
    const double dr = dens.re[i] * c, di = dens.im[i] * c;
    accr += hr * dr - hi * di;
    acci += hr * di + hi * dr;
  }
  return {accr, acci};
}

cplx bm_volume_sum(const VolumeSoA& g, const C2& z, const R4& inv_axes) {
  const double zx1 = z.z1.real(), zy1 = z.z1.imag(), zx2 = z.z2.real(), zy2 = z.z2.imag();
  double accr = 0.0, acci = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double e1r = g.x1[i] - zx1, e1i = g.y1[i] - zy1;
    const double e2r = g.x2[i] - zx2, e2i = g.y2[i] - zy2;
    const double r2 = e1r * e1r + e1i * e1i + e2r * e2r + e2i * e2i;

    const double s0 = e1r * inv_axes[0], s1 = e1i * inv_axes[1];
    const double s2 = e2r * inv_axes[2], s3 = e2i * inv_axes[3];
    const double eta = radial_cut(std::sqrt(s0 * s0 + s1 * s1 + s2 * s2 + s3 * s3));
    if (eta == 0.0 || r2 < 1e-280) continue;

    // num = p1 conj(z1 - zeta1) + p2 conj(z2 - zeta2); conj(z - zeta) = (-e_r, e_i)
    const double numr = -g.p1r[i] * e1r - g.p1i[i] * e1i - g.p2r[i] * e2r - g.p2i[i] * e2i;
    const double numi = g.p1r[i] * e1i - g.p1i[i] * e1r + g.p2r[i] * e2i - g.p2i[i] * e2r;

    const double f = eta / (r2 * r2);
    accr += numr * f;
    acci += numi * f;
  }
  return {accr, acci};
}

}  // namespace dbarlab::reduce::scalar
