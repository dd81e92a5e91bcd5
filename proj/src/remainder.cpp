#include "dbarlab/geometry/remainder.hpp"

#include <cmath>
#include <random>

namespace dbarlab {

namespace {

double axis_value(const C2& z, int axis) {
  switch (axis) {
    case 0: return z.z1.real();
    case 1: return z.z1.imag();
    case 2: return z.z2.real();
    default: return z.z2.imag();
  }
}

// d(axis)/dz1, d(axis)/dz2 as Wirtinger derivatives
std::pair<cplx, cplx> axis_wirtinger(int axis) {
  switch (axis) {
    case 0: return {cplx(0.5, 0.0), cplx(0, 0)};
    case 1: return {cplx(0.0, -0.5), cplx(0, 0)};
    case 2: return {cplx(0, 0), cplx(0.5, 0.0)};
    default: return {cplx(0, 0), cplx(0.0, -0.5)};
  }
}

}  // namespace

double ConvexRemainder::eval(const C2& z) const {
  double r = 0.0;
  for (const auto& t : terms_) {
    switch (t.kind) {
      case Term::Kind::Constant:
        r += t.c;
        break;
      case Term::Kind::Linear:
        r += 2.0 * (std::conj(t.b1) * z.z1 + std::conj(t.b2) * z.z2).real();
        break;
      case Term::Kind::Quadratic:
        r += t.k1 * std::norm(z.z1) + t.k2 * std::norm(z.z2);
        break;
      case Term::Kind::ExpRadial: {
        double a = t.slot == 1 ? std::abs(z.z1) : std::abs(z.z2);
        r += a > 0.0 ? t.coeff * std::exp(-std::pow(a, -t.gamma)) : 0.0;
        break;
      }
      case Term::Kind::ExpAxis: {
        double a = std::abs(axis_value(z, t.axis));
        r += a > 0.0 ? t.coeff * std::exp(-std::pow(a, -t.gamma)) : 0.0;
        break;
      }
      case Term::Kind::HingeSq: {
        double a = std::abs(axis_value(z, t.axis)) - t.delta;
        r += a > 0.0 ? a * a : 0.0;
        break;
      }
    }
  }
  return r;
}

std::pair<cplx, cplx> ConvexRemainder::wirtinger_grad(const C2& z) const {
  cplx g1(0, 0), g2(0, 0);
  for (const auto& t : terms_) {
    switch (t.kind) {
      case Term::Kind::Constant:
        break;
      case Term::Kind::Linear:
        g1 += std::conj(t.b1);
        g2 += std::conj(t.b2);
        break;
      case Term::Kind::Quadratic:
        g1 += t.k1 * std::conj(z.z1);
        g2 += t.k2 * std::conj(z.z2);
        break;
      case Term::Kind::ExpRadial: {
        const cplx w = t.slot == 1 ? z.z1 : z.z2;
        const double a = std::abs(w);
        if (a > 0.0) {
          // d/dw [exp(-(w wbar)^(-g/2))] = exp(...) * (g/2) a^(-g-2) wbar
          const cplx g = t.coeff * std::exp(-std::pow(a, -t.gamma)) * (t.gamma / 2.0) *
                         std::pow(a, -t.gamma - 2.0) * std::conj(w);
          (t.slot == 1 ? g1 : g2) += g;
        }
        break;
      }
      case Term::Kind::ExpAxis: {
        const double x = axis_value(z, t.axis);
        const double a = std::abs(x);
        if (a > 0.0) {
          const double dval = t.coeff * std::exp(-std::pow(a, -t.gamma)) * t.gamma *
                              std::pow(a, -t.gamma - 1.0) * (x >= 0.0 ? 1.0 : -1.0);
          auto [w1, w2] = axis_wirtinger(t.axis);
          g1 += dval * w1;
          g2 += dval * w2;
        }
        break;
      }
      case Term::Kind::HingeSq: {
        const double x = axis_value(z, t.axis);
        const double a = std::abs(x) - t.delta;
        if (a > 0.0) {
          const double dval = 2.0 * a * (x >= 0.0 ? 1.0 : -1.0);
          auto [w1, w2] = axis_wirtinger(t.axis);
          g1 += dval * w1;
          g2 += dval * w2;
        }
        break;
      }
    }
  }
  return {g1, g2};
}

RemainderPtr ConvexRemainder::quadratic(double c0, cplx b1, cplx b2, double k1, double k2) {
  std::vector<Term> ts;
  if (c0 != 0.0) ts.push_back({.kind = Term::Kind::Constant, .c = c0});
  if (b1 != cplx(0, 0) || b2 != cplx(0, 0)) {
    Term t{.kind = Term::Kind::Linear};
    t.b1 = b1;
    t.b2 = b2;
    ts.push_back(t);
  }
  Term q{.kind = Term::Kind::Quadratic};
  q.k1 = k1;
  q.k2 = k2;
  ts.push_back(q);
  return std::make_shared<ConvexRemainder>(std::move(ts), "quadratic");
}

RemainderPtr ConvexRemainder::dalpha(double alpha) {
  std::vector<Term> ts;
  Term e{.kind = Term::Kind::ExpRadial};
  e.slot = 2;
  e.gamma = alpha;
  e.coeff = std::exp(1.0 + 2.0 / alpha);
  ts.push_back(e);
  ts.push_back({.kind = Term::Kind::Constant, .c = -1.0});
  return std::make_shared<ConvexRemainder>(std::move(ts), "dalpha");
}

RemainderConditionReport check_remainder_conditions(const ConvexRemainder& r, double delta,
                                                    int samples, std::uint64_t seed) {
  RemainderConditionReport rep;
  rep.r0_value = r.eval(C2{});
  rep.r0_zero = std::abs(rep.r0_value) <= 1e-12;

  std::mt19937_64 eng(seed);
  auto rand_pt = [&]() {
    C2 z;
    z.z1 = cplx(uniform(eng, -delta, delta), uniform(eng, -delta, delta));
    z.z2 = cplx(uniform(eng, -delta, delta), uniform(eng, -delta, delta));
    return z;
  };

  rep.worst_convexity_gap = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    C2 a = rand_pt(), b = rand_pt();
    double lam = uniform01(eng);
    C2 mid = lam * a + (1.0 - lam) * b;
    double gap = r.eval(mid) - (lam * r.eval(a) + (1.0 - lam) * r.eval(b));
    rep.worst_convexity_gap = std::max(rep.worst_convexity_gap, gap);
  }
  rep.convex = rep.worst_convexity_gap <= 1e-12;

  rep.min_abs_dz2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    C2 z = rand_pt();
    rep.min_abs_dz2 = std::min(rep.min_abs_dz2, std::abs(r.wirtinger_grad(z).second));
  }
  rep.dz2_nonzero = rep.min_abs_dz2 > 1e-12;
  return rep;
}

}  // namespace dbarlab
