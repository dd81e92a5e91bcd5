#include "dbarlab/geometry/domain.hpp"

#include <cmath>

namespace dbarlab {

bool Chart::is_identity() const {
  return m[0] == cplx(1, 0) && m[1] == cplx(0, 0) && m[2] == cplx(0, 0) && m[3] == cplx(1, 0) &&
         c.z1 == cplx(0, 0) && c.z2 == cplx(0, 0);
}

ModelDomain::ModelDomain(Setting setting, FTypePtr f, RemainderPtr r, std::string name)
    : setting_(setting), f_(std::move(f)), r_(std::move(r)), name_(std::move(name)) {
  probe_geometry();
}

double ModelDomain::rho(const C2& z) const {
  const double t = setting_ == Setting::ComplexModel ? std::norm(z.z1)
                                                     : z.z1.real() * z.z1.real();
  return f_->eval(t) + r_->eval(z);
}

std::pair<cplx, cplx> ModelDomain::grad_rho(const C2& z) const {
  auto [g1, g2] = r_->wirtinger_grad(z);
  if (setting_ == Setting::ComplexModel) {
    g1 += f_->d1(std::norm(z.z1)) * std::conj(z.z1);
  } else {
    const double x1 = z.z1.real();
    g1 += f_->d1(x1 * x1) * x1;  // d(x1^2)/dz1 = x1
  }
  return {g1, g2};
}

R4 ModelDomain::grad_rho_real(const C2& z) const {
  auto [g1, g2] = grad_rho(z);
  return {2.0 * g1.real(), -2.0 * g1.imag(), 2.0 * g2.real(), -2.0 * g2.imag()};
}

R4 ModelDomain::outward_normal(const C2& z) const {
  if (std::abs(rho(z)) > 1e-9)
    throw precondition_error("outward_normal: point is not on the boundary");
  R4 g = grad_rho_real(z);
  double n = norm(g);
  if (n < 1e-14) throw degenerate_point_error("outward_normal: vanishing gradient");
  return (1.0 / n) * g;
}

void ModelDomain::require_in_chart(const C2& z) const {
  if (!in_chart(z)) throw out_of_chart_error("point outside the chart validity patch");
}

bool ModelDomain::in_chart(const C2& z) const {
  const double a1 = setting_ == Setting::ComplexModel ? std::abs(z.z1) : std::abs(z.z1.real());
  if (a1 >= f_->valid_radius()) return false;
  return dist(z, anchor_) <= chart_radius_;
}

double ModelDomain::radial_root(const R4& u, double level) const {
  const R4 a = anchor_.to_r4();
  auto val = [&](double s) { return rho(C2::from_r4(a + s * u)) - level; };
  if (val(0.0) >= 0.0) throw geometry_error("radial_root: anchor not below the target level");

  double lo = 0.0;
  double hi = 0.25 * (extents_[0] + extents_[1] + extents_[2] + extents_[3]);
  int guard = 0;
  while (val(hi) < 0.0) {
    lo = hi;
    hi *= 1.6;
    if (++guard > 90) throw geometry_error("radial_root: level set not bracketed along direction");
  }
  for (int i = 0; i < 90; ++i) {
    const double mid = 0.5 * (lo + hi);
    (val(mid) < 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const C2 z = C2::from_r4(a + s * u);
    const double g = dot(grad_rho_real(z), u);
    if (g <= 0.0) break;
    const double sn = s - (rho(z) - level) / g;
    if (sn < lo || sn > hi) break;
    s = sn;
    if (std::abs(rho(C2::from_r4(a + s * u)) - level) < 1e-14) break;
  }
  return s;
}

ModelDomain::BoundaryHit ModelDomain::project_to_boundary(const C2& z) const {
  C2 p = z;
  for (int sweep = 0; sweep < 3 && std::abs(rho(p)) > 1e-13; ++sweep) {
    const double v = rho(p);
    R4 g = grad_rho_real(p);
    const double gn = norm(g);
    if (gn < 1e-14) throw degenerate_point_error("project_to_boundary: vanishing gradient");
    const R4 dir = (1.0 / gn) * g;  // uphill
    auto val = [&](double s) { return rho(C2::from_r4(p.to_r4() + s * dir)); };

    const double sgn = v < 0.0 ? 1.0 : -1.0;  // inside: march outward
    double lo = 0.0, hi = sgn * std::abs(v) / gn;
    int guard = 0;
    while (val(hi) * v > 0.0) {
      lo = hi;
      hi *= 1.7;
      if (++guard > 70) throw geometry_error("project_to_boundary: no boundary along normal");
    }
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (val(mid) * v > 0.0 ? lo : hi) = mid;
    }
    p = C2::from_r4(p.to_r4() + (0.5 * (lo + hi)) * dir);
  }
  BoundaryHit hit;
  hit.point = p;
  hit.normal = outward_normal(p);
  hit.signed_dist = dist(z, p) * (rho(z) < 0.0 ? 1.0 : -1.0);
  return hit;
}

void ModelDomain::set_anchor(const C2& a) {
  anchor_ = a;
  probe_geometry();
}

void ModelDomain::probe_geometry() {
  // Compass search toward the minimum of rho from the current anchor.
  R4 x = anchor_.to_r4();
  double fx = rho(C2::from_r4(x));
  double step = 0.25;
  for (int it = 0; it < 500 && step > 1e-7; ++it) {
    bool moved = false;
    for (int j = 0; j < 4; ++j) {
      for (double sgn : {+1.0, -1.0}) {
        R4 y = x;
        y[j] += sgn * step;
        const double fy = rho(C2::from_r4(y));
        if (fy < fx - 1e-15) {
          x = y;
          fx = fy;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  if (fx >= 0.0) throw geometry_error("domain has no interior near the anchor");
  anchor_ = C2::from_r4(x);

  for (int j = 0; j < 4; ++j) {
    R4 u{0, 0, 0, 0};
    u[j] = 1.0;
    auto reach = [&](double sgn) {
      double s = 1e-3;
      int guard = 0;
      while (rho(C2::from_r4(x + (sgn * s) * u)) < 0.0) {
        s *= 1.5;
        if (++guard > 140) throw geometry_error("domain unbounded along an axis");
      }
      double a = s / 1.5, b = s;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (a + b);
        (rho(C2::from_r4(x + (sgn * mid) * u)) < 0.0 ? a : b) = mid;
      }
      return 0.5 * (a + b);
    };
    extents_[j] = std::max(reach(+1.0), reach(-1.0));
  }
  diameter_ = 2.0 * norm(extents_);
  if (chart_radius_ <= 0.0) chart_radius_ = 4.0 * norm(extents_) + 1.0;
}

DomainPtr ModelDomain::unit_ball() {
  auto d = std::make_shared<ModelDomain>(Setting::ComplexModel, FType::monomial(1.0, 32.0),
                                         ConvexRemainder::quadratic(-1.0, {0, 0}, {0, 0}, 0.0, 1.0),
                                         "unit-ball");
  Chart ch;
  ch.c = C2{{1.0, 0.0}, {0.0, 0.0}};  // distinguished boundary point (1,0)
  d->set_chart(ch);
  return d;
}

DomainPtr ModelDomain::dalpha(double alpha) {
  auto d = std::make_shared<ModelDomain>(Setting::ComplexModel, FType::monomial(1.0, 32.0),
                                         ConvexRemainder::dalpha(alpha), "dalpha");
  Chart ch;
  ch.c = C2{{1.0, 0.0}, {0.0, 0.0}};
  d->set_chart(ch);
  return d;
}

DomainPtr ModelDomain::om_model(Setting setting, double alpha) {
  // The profile scale bounds the domain: A exp(-1/t^(alpha/2)) reaches 1 at
  // t = (log A)^(-2/alpha), inside the F''/F''' validity window for A = e^16.
  auto f = FType::exponential(alpha, 0.0, std::exp(16.0));
  auto r = ConvexRemainder::quadratic(0.0, {0, 0}, {1.0, 0.0}, 0.0, 1.0);  // 2 Re z2 + |z2|^2
  auto d = std::make_shared<ModelDomain>(setting, f, r,
                                         setting == Setting::ComplexModel ? "om1-style" : "om2-style");
  d->set_delta(0.8 * f->valid_radius());
  return d;
}

}  // namespace dbarlab
