#pragma once

#include <span>

#include "dbarlab/operators/forms.hpp"

namespace dbarlab {

// max_j |FD du/dzbar_j (z) - phi_j(z)| / (1 + max_j |phi_j(z)|)
// Central Wirtinger stencil of width h; the 2h-ball must stay inside Omega.
double dbar_fd_check(const ModelDomain& domain, const std::function<cplx(const C2&)>& u,
                     const Form01& phi, const C2& z, double h);

// Scattered-data interpolation on a level-set grid: weighted least-squares
// quadratic fit over neighbors in the tangent chart. Shared by the tangential
// CR residual and the boundary-curve machinery.
class LocalSurfaceFit {
 public:
  LocalSurfaceFit(const ModelDomain& domain, const BoundaryGrid& grid, std::vector<cplx> values);

  // value at an arbitrary point on (or near) the grid surface
  cplx value(const C2& p) const;

  // tangential gradient at p in the orthonormal frame returned via *frame
  std::array<cplx, 3> tangential_gradient(const C2& p, std::array<R4, 3>* frame = nullptr) const;

  // indices of nodes within radius of p
  std::vector<std::size_t> neighbors(const C2& p, double radius) const;

 private:
  void fit_at(const C2& p, std::array<cplx, 10>& coef, std::array<R4, 3>& frame) const;

  const ModelDomain* domain_;
  const BoundaryGrid* grid_;
  std::vector<cplx> values_;
  // uniform hash grid over node coordinates for neighbor lookups
  double cell_ = 0.0;
  R4 origin_{0, 0, 0, 0};
  std::array<int, 4> dims_{1, 1, 1, 1};
  std::vector<std::vector<std::uint32_t>> buckets_;
};

// Tangential CR residual at a grid node: compares the CR derivative of the
// neighbor-fit of u with the tangential part of phi. The CR field Lbar is the
// unit (0,1) vector annihilating d rho.
double dbarb_fd_check(const ModelDomain& domain, const BoundaryGrid& grid,
                      const std::vector<cplx>& u_values, const Form01& phi, std::size_t node_index);

// Same, reusing a prebuilt fit when checking many nodes.
double dbarb_fd_check(const LocalSurfaceFit& fit, const ModelDomain& domain, const BoundaryGrid& grid,
                      const Form01& phi, std::size_t node_index);

}  // namespace dbarlab
