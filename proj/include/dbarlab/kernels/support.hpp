#pragma once

#include "dbarlab/geometry/domain.hpp"

namespace dbarlab {

// Support function Phi(zeta, z) = sum_j d rho(zeta)/d zeta_j (zeta_j - z_j).
cplx support_phi(const ModelDomain& domain, const C2& zeta, const C2& z);

// Convexity lower bound for 2 Re Phi (ComplexModel):
// rho(zeta) - rho(z) + F'(|zeta1|^2)|z1-zeta1|^2
//   + [F(|z1|^2) - F(|zeta1|^2) - F'(|zeta1|^2)(|z1|^2 - |zeta1|^2)]
double re_phi_lower_bound(const ModelDomain& domain, const C2& zeta, const C2& z);

// The bracket term alone; nonnegative by convexity of F.
double re_phi_bracket(const ModelDomain& domain, const C2& zeta, const C2& z);

// H(zeta,z) = [rho_z1(zeta)(conj z2 diff) - rho_z2(zeta)(conj z1 diff)]
//             / (Phi(zeta,z) |zeta-z|^2)
cplx kernel_h(const ModelDomain& domain, const C2& zeta, const C2& z);

}  // namespace dbarlab
