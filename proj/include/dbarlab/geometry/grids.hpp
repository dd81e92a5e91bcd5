#pragma once

#include <iosfwd>
#include <vector>

#include "dbarlab/geometry/domain.hpp"

namespace dbarlab {

// Quadrature nodes on a level set {rho = -level}. Structure-of-arrays so the
// kernel reductions can stream it. Node data also carries the Wirtinger
// gradient of rho and the two complex factors (J1, J2) realizing
// phi ^ omega(zeta) -> (phi1 J1 + phi2 J2) dsigma, orientation fixed by the
// dbar identity on the ball.
struct BoundaryGrid {
  double level = 0.0;  // grid lies on {rho = -level}; negative = outer level
  std::vector<double> x1, y1, x2, y2;
  std::vector<double> w;
  std::vector<double> nu1, nu2, nu3, nu4;
  std::vector<double> g1r, g1i, g2r, g2i;  // d rho / d zeta at node
  std::vector<double> j1r, j1i, j2r, j2i;
  double spacing = 0.0;  // ~ (area / n)^(1/3)
  double area = 0.0;
  C2 anchor{};

  std::size_t size() const { return x1.size(); }
  C2 node(std::size_t i) const { return C2{{x1[i], y1[i]}, {x2[i], y2[i]}}; }
  R4 normal(std::size_t i) const { return {nu1[i], nu2[i], nu3[i], nu4[i]}; }
  cplx grad1(std::size_t i) const { return {g1r[i], g1i[i]}; }
  cplx grad2(std::size_t i) const { return {g2r[i], g2i[i]}; }
  cplx jac1(std::size_t i) const { return {j1r[i], j1i[i]}; }
  cplx jac2(std::size_t i) const { return {j2r[i], j2i[i]}; }
};

// Interior lattice with midpoint weights; cells straddling the boundary are
// subdivided a fixed number of levels.
struct VolumeGrid {
  std::vector<double> x1, y1, x2, y2;
  std::vector<double> w;
  R4 h0{0, 0, 0, 0};  // level-0 cell size per axis
  double volume = 0.0;

  std::size_t size() const { return x1.size(); }
  C2 node(std::size_t i) const { return C2{{x1[i], y1[i]}, {x2[i], y2[i]}}; }
};

// Level-set grid by radial root finding from the anchor. resolution n gives
// 2n^3 nodes; directions are pushed through the per-axis extent map so thin
// domains are sampled evenly.
BoundaryGrid build_boundary_grid(const ModelDomain& domain, double eps, int resolution);

VolumeGrid build_volume_grid(const ModelDomain& domain, int resolution, int subdivide_levels = 1);

void export_boundary_grid_csv(const BoundaryGrid& g, std::ostream& os);
void export_volume_grid_csv(const VolumeGrid& g, std::ostream& os);

// Product quadrature directions on S^3 (Gauss x Gauss x uniform), weights
// summing to 2 pi^2. Shared by the level-set builder and the kernel caps.
struct S3Rule {
  std::vector<R4> dirs;
  std::vector<double> w;
};
S3Rule s3_product_rule(int n);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace dbarlab
