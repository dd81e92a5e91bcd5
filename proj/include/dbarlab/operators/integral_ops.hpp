#pragma once

#include <optional>

#include "dbarlab/geometry/grids.hpp"
#include "dbarlab/operators/forms.hpp"
#include "dbarlab/simd/reduce.hpp"

namespace dbarlab {

struct OperatorOptions {
  double rcut_cells = 3.0;       // volume exclusion semi-axes, in level-0 cells
  double near_threshold = 3.0;   // near-eval kicks in below this many spacings
  double patch_radius_cells = 4.0;
  int patch_shells = 12;
  int patch_theta = 4;           // S^2 rule of the patch: Gauss in cos(theta)
  int patch_phi = 8;             //                        uniform in phi
  bool allow_near_eval = true;
  double closedness_tol = 1e-4;  // FD dbar-closedness gate for henkin_solve
  int threads = 1;
};

// Boundary grid with the phi-dependent density (phi1 J1 + phi2 J2) w baked
// into SoA arrays.
struct PreparedBoundary {
  const ModelDomain* domain = nullptr;
  const BoundaryGrid* grid = nullptr;
  Form01 phi;
  std::vector<double> dens_re, dens_im;

  reduce::BoundarySoA soa() const {
    return {grid->x1.data(), grid->y1.data(), grid->x2.data(), grid->y2.data(),
            grid->g1r.data(), grid->g1i.data(), grid->g2r.data(), grid->g2i.data(), grid->size()};
  }
  reduce::DensitySoA dens() const { return {dens_re.data(), dens_im.data()}; }
};

PreparedBoundary prepare_boundary(const ModelDomain& domain, const BoundaryGrid& grid, Form01 phi);

struct PreparedVolume {
  const ModelDomain* domain = nullptr;
  const VolumeGrid* grid = nullptr;
  Form01 phi;
  std::vector<double> p1r, p1i, p2r, p2i;
  R4 semi_axes{0, 0, 0, 0};
  double m11 = 0.0, m22 = 0.0;  // exclusion compensation constants

  reduce::VolumeSoA soa() const {
    return {grid->x1.data(), grid->y1.data(), grid->x2.data(), grid->y2.data(),
            p1r.data(), p1i.data(), p2r.data(), p2i.data(), grid->size()};
  }
};

PreparedVolume prepare_volume(const ModelDomain& domain, const VolumeGrid& grid, Form01 phi,
                              const OperatorOptions& opts = {});

// (1/4pi^2) int_{level set} H(zeta, z) phi ^ omega. Near the grid surface the
// sum switches to a smooth angular cutoff plus a re-quadratured local patch.
cplx op_h_boundary(const PreparedBoundary& pb, const C2& z, const OperatorOptions& opts = {});

// Same with the kernel's gradient slot at the fixed point p (used by H^-).
cplx op_h_first_slot(const PreparedBoundary& pb, const C2& p, const OperatorOptions& opts = {});

// Bochner-Martinelli solid term with smooth exclusion + compensation.
cplx op_k_volume(const PreparedVolume& pv, const C2& z, const OperatorOptions& opts = {});

// Henkin solution T phi = H phi + K phi; phi must be dbar-closed (FD gate).
SolutionField henkin_solve(const ModelDomain& domain, const BoundaryGrid& grid,
                           const VolumeGrid& vgrid, const Form01& phi,
                           const OperatorOptions& opts = {});

cplx op_h_plus(const PreparedBoundary& pb, const C2& z, double eps, const OperatorOptions& opts = {});
cplx op_h_minus(const PreparedBoundary& pb, const C2& z, double eps, const OperatorOptions& opts = {});

// max_{a+b<=degree} | int phi ^ (z1^a z2^b dz1^dz2) |
double compatibility_check(const PreparedBoundary& pb, int degree = 4);

// T_b phi (z) = H+ phi - H- phi at regularization eps; optional Richardson
// extrapolation from (eps, eps/2). compat_tol < 0 skips the gate.
cplx dbar_b_solve(const PreparedBoundary& pb, const C2& z, double eps, double compat_tol,
                  const OperatorOptions& opts = {}, bool richardson = false);

// (sum |u_i|^p w_i)^(1/p), or max |u_i| for p = inf
double lp_norm(const BoundaryGrid& grid, const std::vector<cplx>& values, double p);

// Hoelder gain envelope G(s)/s: G = sqrt(F*(s)), with the extra
// |log sqrt(F*(s))| factor in the real setting.
double gain_envelope_g(const ModelDomain& domain, double s);

// (|grad H^{side} phi| at the s-offset of x, G(s)/s * ||phi||_inf)
struct GradientProbe {
  double observed = 0.0;
  double envelope = 0.0;
};
GradientProbe gradient_probe(const PreparedBoundary& pb, const C2& x, double s, int side,
                             double phi_sup, const OperatorOptions& opts = {});

// Shaw cross-check for boundary z: compares K phi(z) with
// -int_{bOmega} H(z, zeta) phi ^ omega. Reported, not asserted.
struct ShawCheck {
  cplx k_volume;
  cplx k_boundary;
  double abs_diff;
};
ShawCheck shaw_identity_check(const PreparedBoundary& pb, const PreparedVolume& pv, const C2& z,
                              const OperatorOptions& opts = {});

}  // namespace dbarlab
