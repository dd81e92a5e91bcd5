#include "dbarlab/geometry/ftype.hpp"

#include <algorithm>
#include <cmath>

namespace dbarlab {

double FType::inverse(double s) const {
  const double t_hi_limit = d_tilde_ * d_tilde_;
  const double f_lo = 0.0;
  const double f_hi = eval(t_hi_limit);
  if (s < f_lo - 1e-15 || s > f_hi * (1.0 + 1e-12) + 1e-300)
    throw range_error("f_inverse: s outside the range of F on [0, d_tilde^2)");
  if (s <= 0.0) return 0.0;

  double lo = 0.0, hi = t_hi_limit;
  // bisection until the bracket is tight, then Newton polish
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (eval(mid) < s)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-300 || (hi - lo) < 1e-14 * std::max(hi, 1e-30)) break;
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    double ft = eval(t) - s;
    double dft = d1(t);
    if (dft <= 0.0) break;
    double step = ft / dft;
    double tn = t - step;
    if (tn < lo || tn > hi) break;
    t = tn;
    if (std::abs(step) < 1e-15 * std::max(t, 1e-30)) break;
  }
  return t;
}

namespace {

class MonomialF final : public FType {
 public:
  MonomialF(double m, double d_tilde, double scale)
      : FType("monomial", m, d_tilde), m_(m), a_(scale) {}
  double eval(double t) const override { return a_ * std::pow(t, m_); }
  double d1(double t) const override { return t <= 0.0 && m_ > 1.0 ? 0.0 : a_ * m_ * std::pow(t, m_ - 1.0); }
  double d2(double t) const override {
    if (m_ == 1.0) return 0.0;
    if (t <= 0.0) return m_ > 2.0 ? 0.0 : (m_ == 2.0 ? 2.0 * a_ : std::numeric_limits<double>::infinity());
    return a_ * m_ * (m_ - 1.0) * std::pow(t, m_ - 2.0);
  }
  double d3(double t) const override {
    if (m_ == 1.0 || m_ == 2.0) return 0.0;
    if (t <= 0.0) return m_ > 3.0 ? 0.0 : (m_ == 3.0 ? 6.0 * a_ : std::numeric_limits<double>::infinity());
    return a_ * m_ * (m_ - 1.0) * (m_ - 2.0) * std::pow(t, m_ - 3.0);
  }
  double log_f_of_exp(double u) const override { return std::log(a_) + m_ * u; }

 private:
  double m_;
  double a_;
};

// F(t) = A exp(-1 / t^(alpha/2)); paper convention: F(t^2) = A exp(-1/t^alpha).
class ExponentialF final : public FType {
 public:
  ExponentialF(double alpha, double d_tilde, double scale)
      : FType("exponential", alpha, d_tilde), b_(alpha / 2.0), a_(scale) {}
  double eval(double t) const override {
    if (t <= 0.0) return 0.0;
    return a_ * std::exp(-std::pow(t, -b_));
  }
  double d1(double t) const override {
    if (t <= 0.0) return 0.0;
    return eval(t) * b_ * std::pow(t, -b_ - 1.0);
  }
  double d2(double t) const override {
    if (t <= 0.0) return 0.0;
    const double u = std::pow(t, -b_);
    return eval(t) * b_ * std::pow(t, -b_ - 2.0) * (b_ * u - (b_ + 1.0));
  }
  double d3(double t) const override {
    if (t <= 0.0) return 0.0;
    const double u = std::pow(t, -b_);
    const double q = b_ * b_ * u * u - 3.0 * b_ * (b_ + 1.0) * u + (b_ + 1.0) * (b_ + 2.0);
    return eval(t) * b_ * std::pow(t, -b_ - 3.0) * q;
  }
  double log_f_of_exp(double u) const override { return std::log(a_) - std::exp(-b_ * u); }

 private:
  double b_;
  double a_;
};

// Monotone piecewise-cubic Hermite through (t_i, f_i) with Fritsch-Carlson
// slope limiting. d2 is piecewise linear, d3 piecewise constant.
class TableF final : public FType {
 public:
  TableF(std::vector<double> t, std::vector<double> f, double d_tilde)
      : FType("table", 0.0, d_tilde), t_(std::move(t)), f_(std::move(f)) {
    const std::size_t n = t_.size();
    if (n < 2 || f_.size() != n) throw data_error("table F: need >= 2 samples");
    for (std::size_t i = 1; i < n; ++i)
      if (t_[i] <= t_[i - 1] || f_[i] < f_[i - 1])
        throw data_error("table F: samples must be strictly increasing in t, nondecreasing in f");
    slopes_.resize(n, 0.0);
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (f_[i + 1] - f_[i]) / (t_[i + 1] - t_[i]);
    slopes_[0] = d[0];
    slopes_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      slopes_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);
  }
  double eval(double t) const override { return hermite(t, 0); }
  double d1(double t) const override { return hermite(t, 1); }
  double d2(double t) const override { return hermite(t, 2); }
  double d3(double t) const override { return hermite(t, 3); }
  double log_f_of_exp(double u) const override {
    double v = eval(std::exp(u));
    return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
  }

 private:
  double hermite(double t, int deriv) const {
    const std::size_t n = t_.size();
    std::size_t i = std::upper_bound(t_.begin(), t_.end(), t) - t_.begin();
    i = i == 0 ? 0 : std::min(i - 1, n - 2);
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double p0 = f_[i], p1 = f_[i + 1], m0 = slopes_[i] * h, m1 = slopes_[i + 1] * h;
    switch (deriv) {
      case 0:
        return p0 + s * (m0 + s * ((-3 * p0 + 3 * p1 - 2 * m0 - m1) + s * (2 * p0 - 2 * p1 + m0 + m1)));
      case 1:
        return (m0 + s * (2 * (-3 * p0 + 3 * p1 - 2 * m0 - m1) + 3 * s * (2 * p0 - 2 * p1 + m0 + m1))) / h;
      case 2:
        return (2 * (-3 * p0 + 3 * p1 - 2 * m0 - m1) + 6 * s * (2 * p0 - 2 * p1 + m0 + m1)) / (h * h);
      default:
        return 6 * (2 * p0 - 2 * p1 + m0 + m1) / (h * h * h);
    }
  }
  std::vector<double> t_, f_, slopes_;
};

}  // namespace

double FType::exp_condition_threshold(double alpha) {
  const double b = alpha / 2.0;
  // F'' >= 0 below t2 = (b/(b+1))^(1/b); F''' >= 0 below t3 = s_plus^(-1/b),
  // roots of b^2 s^2 - 3b(b+1)s + (b+1)(b+2) = 0.
  const double t2 = std::pow(b / (b + 1.0), 1.0 / b);
  const double disc = std::sqrt((5.0 * b + 1.0) / (b + 1.0));
  const double s_plus = (b + 1.0) / (2.0 * b) * (3.0 + disc);
  const double t3 = std::pow(s_plus, -1.0 / b);
  return std::min(t2, t3);
}

FTypePtr FType::monomial(double m, double d_tilde, double scale) {
  if (m < 1.0) throw data_error("monomial F: need m >= 1");
  return std::make_shared<MonomialF>(m, d_tilde, scale);
}

FTypePtr FType::exponential(double alpha, double d_tilde, double scale) {
  if (alpha <= 0.0) throw data_error("exponential F: need alpha > 0");
  if (d_tilde <= 0.0) d_tilde = std::sqrt(0.9 * exp_condition_threshold(alpha));
  return std::make_shared<ExponentialF>(alpha, d_tilde, scale);
}

FTypePtr FType::table(const std::vector<double>& t, const std::vector<double>& f, double d_tilde) {
  if (d_tilde <= 0.0) d_tilde = std::sqrt(t.back());
  return std::make_shared<TableF>(t, f, d_tilde);
}

FConditionReport check_f_conditions(const FType& f, int samples) {
  if (samples < 2) throw precondition_error("check_f_conditions: need samples >= 2");
  FConditionReport rep;
  const double t_max = f.valid_radius() * f.valid_radius();
  const double scale = std::max(std::abs(f.eval(t_max)), 1e-30);
  const double tol = 1e-10 * scale;

  FConditionReport::Item f0{"F(0)=0", std::abs(f.eval(0.0)) <= tol, 0.0, f.eval(0.0)};
  rep.items.push_back(f0);

  auto scan = [&](const std::string& name, auto&& fn) {
    FConditionReport::Item item{name, true, 0.0, 0.0};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
      // log-spaced over ~14 decades up to t_max
      double t = t_max * std::pow(10.0, -14.0 * (1.0 - double(i) / (samples - 1)));
      double v = fn(t);
      if (v < worst) {
        worst = v;
        item.worst_t = t;
        item.worst_value = v;
      }
    }
    item.pass = worst >= -tol;
    rep.items.push_back(item);
  };
  scan("F' >= 0", [&](double t) { return f.d1(t); });
  scan("F'' >= 0", [&](double t) { return f.d2(t); });
  scan("F''' >= 0", [&](double t) { return f.d3(t); });
  scan("(F/t)' >= 0", [&](double t) { return (f.d1(t) * t - f.eval(t)) / (t * t); });
  return rep;
}

}  // namespace dbarlab
