#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "dbarlab/geometry/ftype.hpp"
#include "dbarlab/geometry/remainder.hpp"

namespace dbarlab {

enum class Setting { ComplexModel, RealModel };

// Affine chart w = M (z - c): sends the distinguished ambient point c to the
// model origin. Model formulas are always evaluated in w-coordinates.
struct Chart {
  std::array<cplx, 4> m{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)};  // row-major 2x2
  C2 c{};

  C2 apply(const C2& z) const {
    C2 d = z - c;
    return {m[0] * d.z1 + m[1] * d.z2, m[2] * d.z1 + m[3] * d.z2};
  }
  C2 inverse(const C2& w) const {
    cplx det = m[0] * m[3] - m[1] * m[2];
    C2 d{(m[3] * w.z1 - m[1] * w.z2) / det, (-m[2] * w.z1 + m[0] * w.z2) / det};
    return d + c;
  }
  bool is_identity() const;
};

// Model domain rho(z) = F(|z1|^2) + r(z)  (ComplexModel)
//                     = F(x1^2)   + r(z)  (RealModel)
// in model coordinates, studied globally within one chart patch.
class ModelDomain {
 public:
  ModelDomain(Setting setting, FTypePtr f, RemainderPtr r, std::string name = "domain");

  double rho(const C2& z) const;
  std::pair<cplx, cplx> grad_rho(const C2& z) const;  // (d rho/dz1, d rho/dz2)
  R4 grad_rho_real(const C2& z) const;
  R4 outward_normal(const C2& z) const;  // requires |rho(z)| <= 1e-9

  double rho_ambient(const C2& z_ambient) const { return rho(chart_.apply(z_ambient)); }

  Setting setting() const { return setting_; }
  const FType& f_type() const { return *f_; }
  const FTypePtr& f_ptr() const { return f_; }
  const ConvexRemainder& remainder() const { return *r_; }
  const Chart& chart() const { return chart_; }
  void set_chart(const Chart& c) { chart_ = c; }
  const std::string& name() const { return name_; }

  double delta() const { return delta_; }
  void set_delta(double d) { delta_ = d; }
  double diameter() const { return diameter_; }
  double chart_radius() const { return chart_radius_; }
  void set_chart_radius(double r) { chart_radius_ = r; }

  const C2& anchor() const { return anchor_; }
  void set_anchor(const C2& a);
  // Half-extent of {rho<0} from the anchor along +/- each real axis.
  const R4& extents() const { return extents_; }

  // Throws out_of_chart_error when z leaves the patch or |z1| exceeds the
  // F-profile validity radius.
  void require_in_chart(const C2& z) const;
  bool in_chart(const C2& z) const;

  // Root of rho(anchor + s u) = level along the unit direction u, s > 0.
  double radial_root(const R4& u, double level) const;

  // March from an interior/exterior point to {rho=0} along the normal
  // direction; returns the hit point and the signed distance (positive when
  // z is inside). Two projection sweeps, good to O(curvature * dist^2).
  struct BoundaryHit {
    C2 point;
    R4 normal;
    double signed_dist;
  };
  BoundaryHit project_to_boundary(const C2& z) const;

  // Shipped models
  static std::shared_ptr<ModelDomain> unit_ball();
  static std::shared_ptr<ModelDomain> dalpha(double alpha);
  // Paper-normalized infinite-type model at the origin:
  //   rho = F(|z1|^2) + 2 Re z2 + |z2|^2   (ComplexModel; "om1 style")
  //   rho = F(x1^2)   + 2 Re z2 + |z2|^2   (RealModel;    "om2 style")
  static std::shared_ptr<ModelDomain> om_model(Setting setting, double alpha);

 private:
  void probe_geometry();

  Setting setting_;
  FTypePtr f_;
  RemainderPtr r_;
  Chart chart_;
  std::string name_;
  C2 anchor_{};
  R4 extents_{1, 1, 1, 1};
  double diameter_ = 2.0;
  double delta_ = 0.5;
  double chart_radius_ = 0.0;
};

using DomainPtr = std::shared_ptr<ModelDomain>;

}  // namespace dbarlab
