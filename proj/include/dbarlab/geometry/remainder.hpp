#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dbarlab/core.hpp"

namespace dbarlab {

// Convex remainder r in rho = F(.) + r. Built from additive terms so the
// shipped model families (ball-like quadratics, the D_alpha exponential,
// ellipsoid-style exponentials, tube hinges) share one implementation.
class ConvexRemainder {
 public:
  struct Term {
    enum class Kind { Constant, Linear, Quadratic, ExpRadial, ExpAxis, HingeSq };
    Kind kind;
    // Constant: c
    // Linear:    2 Re(conj(b1) z1 + conj(b2) z2)
    // Quadratic: k1 |z1|^2 + k2 |z2|^2
    // ExpRadial: coeff * exp(-1/|z_slot|^gamma), slot in {1,2}
    // ExpAxis:   coeff * exp(-1/|axis|^gamma), axis in {x1,y1,x2,y2} = 0..3
    // HingeSq:   max(0, |axis| - delta)^2
    double c = 0.0;
    cplx b1{0, 0}, b2{0, 0};
    double k1 = 0.0, k2 = 0.0;
    int slot = 2;
    int axis = 0;
    double coeff = 1.0;
    double gamma = 1.0;
    double delta = 0.0;
  };

  explicit ConvexRemainder(std::vector<Term> terms, std::string family = "custom")
      : terms_(std::move(terms)), family_(std::move(family)) {}

  double eval(const C2& z) const;
  // Wirtinger gradient (dr/dz1, dr/dz2)
  std::pair<cplx, cplx> wirtinger_grad(const C2& z) const;

  const std::string& family() const { return family_; }
  const std::vector<Term>& terms() const { return terms_; }

  // r(z) = k2 |z2|^2 + 2 Re(conj(b2) z2) + c0
  static std::shared_ptr<const ConvexRemainder> quadratic(double c0, cplx b1, cplx b2, double k1, double k2);
  // r(z) = exp(1 + 2/alpha - 1/|z2|^alpha) - 1
  static std::shared_ptr<const ConvexRemainder> dalpha(double alpha);
};

using RemainderPtr = std::shared_ptr<const ConvexRemainder>;

struct RemainderConditionReport {
  bool r0_zero = true;
  double r0_value = 0.0;
  bool convex = true;
  double worst_convexity_gap = 0.0;  // max of r(mid) - interpolation over samples
  bool dz2_nonzero = true;
  double min_abs_dz2 = 0.0;
};

// Sampled checks over the patch |z| <= delta: r(0)=0, midpoint convexity,
// and dr/dz2 != 0 (paper-normalized models only; convenience models such as
// the centered ball keep r(0) != 0 on purpose).
RemainderConditionReport check_remainder_conditions(const ConvexRemainder& r, double delta,
                                                    int samples, std::uint64_t seed);

}  // namespace dbarlab
