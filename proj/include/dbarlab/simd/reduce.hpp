#pragma once

#include <cstddef>
#include <string>

#include "dbarlab/core.hpp"

namespace dbarlab::reduce {

// Streams over level-set nodes: coordinates and d rho / d zeta.
struct BoundarySoA {
  const double *x1, *y1, *x2, *y2;
  const double *g1r, *g1i, *g2r, *g2i;
  std::size_t n;
};

// Premultiplied node density (phi1 J1 + phi2 J2) * w.
struct DensitySoA {
  const double *re, *im;
};

struct VolumeSoA {
  const double *x1, *y1, *x2, *y2;
  const double *p1r, *p1i, *p2r, *p2i;  // phi_j(node) * w(node)
  std::size_t n;
};

// Smooth cutoff sphere: nodes inside radius/2 of center drop out, nodes past
// radius keep full weight. radius <= 0 disables the cutoff.
struct Cut {
  R4 center{0, 0, 0, 0};
  double radius = 0.0;
};

// sum_i H(zeta_i, z) dens_i          (kernel gradient at the nodes)
cplx henkin_sum_second(const BoundarySoA& nodes, const DensitySoA& dens, const C2& z, const Cut& cut);

// sum_i H(p, zeta_i) dens_i          (kernel gradient at the fixed point p)
cplx henkin_sum_first(const BoundarySoA& nodes, const DensitySoA& dens, const C2& p, cplx gp1, cplx gp2,
                      const Cut& cut);

// sum_i [p1_i conj(z1 - zeta1) + p2_i conj(z2 - zeta2)] / |zeta-z|^4 * eta_i
// with the anisotropic smooth exclusion eta_i = radial_cut(||S (zeta_i - z)||),
// inv_axes = 1 / semi-axis per real coordinate.
cplx bm_volume_sum(const VolumeSoA& nodes, const C2& z, const R4& inv_axes);

enum class Impl { Auto, Scalar, Avx2 };
void set_impl(Impl impl);      // throws data_error if Avx2 is unavailable
Impl active_impl();            // resolved implementation actually in use
std::string impl_name();

// Scalar reference path, always available (equivalence tests call these).
namespace scalar {
cplx henkin_sum_second(const BoundarySoA&, const DensitySoA&, const C2&, const Cut&);
cplx henkin_sum_first(const BoundarySoA&, const DensitySoA&, const C2&, cplx, cplx, const Cut&);
cplx bm_volume_sum(const VolumeSoA&, const C2&, const R4&);
}  // namespace scalar

#if defined(DBARLAB_BUILD_AVX2)
namespace avx2 {
cplx henkin_sum_second(const BoundarySoA&, const DensitySoA&, const C2&, const Cut&);
cplx henkin_sum_first(const BoundarySoA&, const DensitySoA&, const C2&, cplx, cplx, const Cut&);
cplx bm_volume_sum(const VolumeSoA&, const C2&, const R4&);
}  // namespace avx2
#endif

bool avx2_supported();

}  // namespace dbarlab::reduce
