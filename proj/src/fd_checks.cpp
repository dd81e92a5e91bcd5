#include "dbarlab/operators/fd_checks.hpp"

#include <algorithm>
#include <cmath>

namespace dbarlab {

double dbar_fd_check(const ModelDomain& domain, const std::function<cplx(const C2&)>& u,
                     const Form01& phi, const C2& z, double h) {
  // the stencil ball must stay inside the domain
  for (int axis = 0; axis < 4; ++axis) {
    R4 e{0, 0, 0, 0};
    e[axis] = 2.0 * h;
    if (domain.rho(C2::from_r4(z.to_r4() + e)) >= 0.0 ||
        domain.rho(C2::from_r4(z.to_r4() - e)) >= 0.0)
      throw geometry_error("dbar_fd_check: FD stencil exits the domain");
  }
  cplx fd[2];
  for (int slot = 0; slot < 2; ++slot) {
    C2 ex = slot == 0 ? C2{{1, 0}, {0, 0}} : C2{{0, 0}, {1, 0}};
    C2 ey = slot == 0 ? C2{{0, 1}, {0, 0}} : C2{{0, 0}, {0, 1}};
    const cplx ux = (u(z + h * ex) - u(z - h * ex)) / (2.0 * h);
    const cplx uy = (u(z + h * ey) - u(z - h * ey)) / (2.0 * h);
    fd[slot] = 0.5 * (ux + cplx(0, 1) * uy);
  }
  const cplx p1 = phi.eval1(z), p2 = phi.eval2(z);
  const double denom = 1.0 + std::max(std::abs(p1), std::abs(p2));
  return std::max(std::abs(fd[0] - p1), std::abs(fd[1] - p2)) / denom;
}

LocalSurfaceFit::LocalSurfaceFit(const ModelDomain& domain, const BoundaryGrid& grid,
                                 std::vector<cplx> values)
    : domain_(&domain), grid_(&grid), values_(std::move(values)) {
  if (values_.size() != grid.size()) throw data_error("LocalSurfaceFit: values/grid size mismatch");
  cell_ = 3.0 * grid.spacing;
  R4 lo{1e300, 1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300, -1e300};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const R4 p = grid.node(i).to_r4();
    for (int j = 0; j < 4; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  }
  origin_ = lo;
  std::size_t total = 1;
  for (int j = 0; j < 4; ++j) {
    dims_[j] = std::max(1, static_cast<int>((hi[j] - lo[j]) / cell_) + 1);
    total *= dims_[j];
  }
  buckets_.assign(total, {});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const R4 p = grid.node(i).to_r4();
    std::size_t idx = 0;
    for (int j = 0; j < 4; ++j) {
      int c = std::clamp(static_cast<int>((p[j] - origin_[j]) / cell_), 0, dims_[j] - 1);
      idx = idx * dims_[j] + c;
    }
    buckets_[idx].push_back(static_cast<std::uint32_t>(i));
  }
}

std::vector<std::size_t> LocalSurfaceFit::neighbors(const C2& p, double radius) const {
  std::vector<std::size_t> out;
  const R4 q = p.to_r4();
  int clo[4], chi[4];
  for (int j = 0; j < 4; ++j) {
    clo[j] = std::clamp(static_cast<int>((q[j] - origin_[j] - radius) / cell_), 0, dims_[j] - 1);
    chi[j] = std::clamp(static_cast<int>((q[j] - origin_[j] + radius) / cell_), 0, dims_[j] - 1);
  }
  for (int a = clo[0]; a <= chi[0]; ++a)
    for (int b = clo[1]; b <= chi[1]; ++b)
      for (int c = clo[2]; c <= chi[2]; ++c)
        for (int d = clo[3]; d <= chi[3]; ++d) {
          const std::size_t idx = ((static_cast<std::size_t>(a) * dims_[1] + b) * dims_[2] + c) * dims_[3] + d;
          for (std::uint32_t i : buckets_[idx])
            if (dist(grid_->node(i), p) <= radius) out.push_back(i);
        }
  return out;
}

void LocalSurfaceFit::fit_at(const C2& p, std::array<cplx, 10>& coef, std::array<R4, 3>& frame) const {
  const double radius = 3.0 * grid_->spacing;
  auto nb = neighbors(p, radius);
  if (nb.size() < 6) throw resolution_error("LocalSurfaceFit: fewer than 6 neighbors in range");

  // tangent frame at the projection of p
  auto hit = domain_->project_to_boundary(p);
  const R4 nu0 = hit.normal;
  int have = 0;
  for (int axis = 0; axis < 4 && have < 3; ++axis) {
    R4 v{0, 0, 0, 0};
    v[axis] = 1.0;
    v = v - dot(v, nu0) * nu0;
    for (int k = 0; k < have; ++k) v = v - dot(v, frame[k]) * frame[k];
    const double n = norm(v);
    if (n > 1e-6) frame[have++] = (1.0 / n) * v;
  }
  if (have < 3) throw geometry_error("LocalSurfaceFit: degenerate tangent frame");

  const bool quadratic = nb.size() >= 12;
  const int m = quadratic ? 10 : 4;

  double ata[10][10] = {};
  cplx atb[10] = {};
  for (std::size_t i : nb) {
    const R4 d = grid_->node(i).to_r4() - p.to_r4();
    const double y0 = dot(d, frame[0]), y1 = dot(d, frame[1]), y2 = dot(d, frame[2]);
    double row[10] = {1.0, y0, y1, y2, y0 * y0, y1 * y1, y2 * y2, y0 * y1, y0 * y2, y1 * y2};
    const double r = std::sqrt(y0 * y0 + y1 * y1 + y2 * y2);
    const double wgt = std::exp(-(r / (1.5 * grid_->spacing)) * (r / (1.5 * grid_->spacing)));
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) ata[a][b] += wgt * row[a] * row[b];
      atb[a] += wgt * row[a] * values_[i];
    }
  }
  // Cholesky with a small ridge
  for (int a = 0; a < m; ++a) ata[a][a] += 1e-12;
  double L[10][10] = {};
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b <= a; ++b) {
      double s = ata[a][b];
      for (int k = 0; k < b; ++k) s -= L[a][k] * L[b][k];
      if (a == b) {
        if (s <= 0.0) throw resolution_error("LocalSurfaceFit: singular normal equations");
        L[a][a] = std::sqrt(s);
      } else {
        L[a][b] = s / L[b][b];
      }
    }
  }
  cplx y[10];
  for (int a = 0; a < m; ++a) {
    cplx s = atb[a];
    for (int k = 0; k < a; ++k) s -= L[a][k] * y[k];
    y[a] = s / L[a][a];
  }
  coef.fill(cplx{0, 0});
  for (int a = m - 1; a >= 0; --a) {
    cplx s = y[a];
    for (int k = a + 1; k < m; ++k) s -= L[k][a] * coef[k];
    coef[a] = s / L[a][a];
  }
}

cplx LocalSurfaceFit::value(const C2& p) const {
  std::array<cplx, 10> coef;
  std::array<R4, 3> frame;
  fit_at(p, coef, frame);
  return coef[0];
}

std::array<cplx, 3> LocalSurfaceFit::tangential_gradient(const C2& p, std::array<R4, 3>* frame_out) const {
  std::array<cplx, 10> coef;
  std::array<R4, 3> frame;
  fit_at(p, coef, frame);
  if (frame_out) *frame_out = frame;
  return {coef[1], coef[2], coef[3]};
}

double dbarb_fd_check(const ModelDomain& domain, const BoundaryGrid& grid,
                      const std::vector<cplx>& u_values, const Form01& phi, std::size_t node_index) {
  LocalSurfaceFit fit(domain, grid, u_values);
  return dbarb_fd_check(fit, domain, grid, phi, node_index);
}

double dbarb_fd_check(const LocalSurfaceFit& fit, const ModelDomain& domain, const BoundaryGrid& grid,
                      const Form01& phi, std::size_t node_index) {
  const C2 p = grid.node(node_index);

  {
    auto nb = fit.neighbors(p, 3.0 * grid.spacing);
    if (nb.size() < 7)  // the node itself plus 6
      throw resolution_error("dbarb_fd_check: node has fewer than 6 neighbors within 3 spacings");
  }

  std::array<R4, 3> frame;
  auto grad = fit.tangential_gradient(p, &frame);

  // CR direction: (a, b) with a rho_{zbar1} + b rho_{zbar2} = 0, unit length
  auto [g1, g2] = domain.grad_rho(p);
  cplx a = std::conj(g2), b = -std::conj(g1);
  const double nrm = std::sqrt(std::norm(a) + std::norm(b));
  if (nrm < 1e-14) throw degenerate_point_error("dbarb_fd_check: vanishing CR direction");
  a /= nrm;
  b /= nrm;

  // Lbar = sum_m c_m d/dx_m with c = (a, ia, b, ib)/2
  const cplx c[4] = {0.5 * a, 0.5 * cplx(0, 1) * a, 0.5 * b, 0.5 * cplx(0, 1) * b};
  cplx lu{0, 0};
  for (int k = 0; k < 3; ++k) {
    cplx gamma{0, 0};
    for (int mth = 0; mth < 4; ++mth) gamma += c[mth] * frame[k][mth];
    lu += gamma * grad[k];
  }
  const cplx phi_l = phi.eval1(p) * a + phi.eval2(p) * b;
  return std::abs(lu - phi_l) / (1.0 + std::abs(phi_l));
}

}  // namespace dbarlab
