#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dbarlab/core.hpp"

namespace dbarlab {

// Convexity profile F on [0, d_tilde^2). Governs the boundary flatness:
// monomial profiles are finite type, exponential profiles infinite type.
class FType {
 public:
  virtual ~FType() = default;

  virtual double eval(double t) const = 0;
  virtual double d1(double t) const = 0;
  virtual double d2(double t) const = 0;
  virtual double d3(double t) const = 0;

  // log F(e^u). Improper type integrals need this deep into the flat end,
  // where t and F(t) both leave the range of double.
  virtual double log_f_of_exp(double u) const = 0;

  double log_f(double t) const { return log_f_of_exp(std::log(t)); }

  // Inverse F*(s) by bracketed bisection + Newton polish; monotonicity of F
  // is the only structure assumed.
  double inverse(double s) const;

  double valid_radius() const { return d_tilde_; }
  const std::string& family() const { return family_; }
  double parameter() const { return param_; }

  static std::shared_ptr<const FType> monomial(double m, double d_tilde = 1.0, double scale = 1.0);
  static std::shared_ptr<const FType> exponential(double alpha, double d_tilde = 0.0, double scale = 1.0);
  static std::shared_ptr<const FType> table(const std::vector<double>& t, const std::vector<double>& f,
                                            double d_tilde = 0.0);

  // Largest d_tilde^2 with F'' and F''' nonnegative below it (exponential
  // family); used to default d_tilde for honest infinite-type configs.
  static double exp_condition_threshold(double alpha);

 protected:
  FType(std::string family, double param, double d_tilde)
      : family_(std::move(family)), param_(param), d_tilde_(d_tilde) {}
  std::string family_;
  double param_ = 0.0;
  double d_tilde_ = 1.0;
};

using FTypePtr = std::shared_ptr<const FType>;

struct FConditionReport {
  struct Item {
    std::string name;
    bool pass = true;
    double worst_t = 0.0;
    double worst_value = 0.0;
  };
  std::vector<Item> items;
  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
};

// Signs of F(0), F', F'', F''' and (F/t)' on a log-spaced grid over (0, d_tilde^2).
FConditionReport check_f_conditions(const FType& f, int samples);

}  // namespace dbarlab
