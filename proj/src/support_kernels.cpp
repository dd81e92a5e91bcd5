#include "dbarlab/kernels/support.hpp"

#include <cmath>

namespace dbarlab {

cplx support_phi(const ModelDomain& domain, const C2& zeta, const C2& z) {
  domain.require_in_chart(zeta);
  domain.require_in_chart(z);
  auto [g1, g2] = domain.grad_rho(zeta);
  return g1 * (zeta.z1 - z.z1) + g2 * (zeta.z2 - z.z2);
}

double re_phi_bracket(const ModelDomain& domain, const C2& zeta, const C2& z) {
  const FType& f = domain.f_type();
  const double tz = std::norm(z.z1), tzeta = std::norm(zeta.z1);
  return f.eval(tz) - f.eval(tzeta) - f.d1(tzeta) * (tz - tzeta);
}

double re_phi_lower_bound(const ModelDomain& domain, const C2& zeta, const C2& z) {
  if (domain.setting() != Setting::ComplexModel)
    throw unsupported_setting_error("re_phi_lower_bound: ComplexModel only");
  domain.require_in_chart(zeta);
  domain.require_in_chart(z);
  const double dr = domain.rho(zeta) - domain.rho(z);
  return dr + domain.f_type().d1(std::norm(zeta.z1)) * std::norm(z.z1 - zeta.z1) +
         re_phi_bracket(domain, zeta, z);
}

cplx kernel_h(const ModelDomain& domain, const C2& zeta, const C2& z) {
  const double r2 = norm2(zeta - z);
  if (r2 < 1e-300) throw singularity_error("kernel_h: zeta == z");
  const cplx phi = support_phi(domain, zeta, z);
  if (std::norm(phi) < 1e-300)
    throw singularity_error("kernel_h: Phi(zeta,z) = 0 at |zeta-z| = " + std::to_string(std::sqrt(r2)));
  auto [g1, g2] = domain.grad_rho(zeta);
  const cplx num = g1 * std::conj(zeta.z2 - z.z2) - g2 * std::conj(zeta.z1 - z.z1);
  return num / (phi * r2);
}

}  // namespace dbarlab
