#include "dbarlab/type_analysis/improper.hpp"

#include <cmath>
#include <deque>
#include <vector>

#include "dbarlab/geometry/grids.hpp"

namespace dbarlab {

ShellIntegral integrate_dyadic_to_zero(const std::function<double(double)>& log_h,
                                       const ShellOptions& opts) {
  std::vector<double> gx, gw;
  gauss_legendre(opts.gauss_per_shell, gx, gw);
  const double L = std::log(2.0);

  auto shell_sum = [&](std::size_t n) {
    const double a = n * L;
    double s = 0.0;
    for (int i = 0; i < opts.gauss_per_shell; ++i) {
      const double tau = a + (gx[i] + 1.0) * 0.5 * L;
      const double lv = log_h(tau);
      if (std::isnan(lv)) throw data_error("improper integral: integrand undefined on a shell");
      s += gw[i] * 0.5 * L * (lv == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(lv));
    }
    return s;
  };

  ShellIntegral out;
  const double head = shell_sum(0);
  out.value = head;
  out.shells = 1;

  std::deque<double> recent{head};
  double prev = head;
  std::size_t small_streak = 0;

  for (std::size_t n = 1; n < opts.max_shells; ++n) {
    const double s = shell_sum(n);
    out.value += s;
    out.shells = n + 1;

    recent.push_back(s);
    if (recent.size() > 5) recent.pop_front();

    if (recent.size() == 5) {
      bool nondecr = true;
      for (std::size_t i = 1; i < recent.size(); ++i)
        if (recent[i] < recent[i - 1] * (1.0 - 1e-12)) nondecr = false;
      if (nondecr && out.value > opts.head_blowup * std::max(head, 1e-300)) {
        out.divergent = true;
        return out;
      }
    }

    // harmonic-tail classification: shells decaying like n^{-p}
    if (n >= 16 && s > 0.0 && prev > 0.0 && s <= prev) {
      const double p = std::log(prev / s) / std::log(double(n + 1) / double(n));
      if (p <= 1.02 && s > 1e-8 * out.value) {
        if (p <= 1.0 + 1e-9 && n >= 64) {
          out.divergent = true;
          return out;
        }
      }
      // power-law tail extrapolation once the relative shell is small
      if (p > 1.05 && s < opts.rel_tail_tol * out.value * (p - 1.0) / double(n) * double(n)) {
        // fallthrough to streak logic below
      }
    }

    if (s < opts.rel_tail_tol * std::max(out.value, 1e-300)) {
      if (++small_streak >= 3) {
        // tail estimate: geometric when decay is fast, power-law otherwise
        if (prev > 0.0 && s > 0.0) {
          const double r = s / prev;
          if (r < 0.95) {
            out.value += s * r / (1.0 - r);
          } else {
            const double p = std::log(prev / s) / std::log(double(n + 1) / double(n));
            if (p > 1.05) out.value += s * double(n) / (p - 1.0);
          }
        }
        return out;
      }
    } else {
      small_streak = 0;
    }
    prev = s;
  }
  // ran out of shells with neither criterion: classify by trend
  out.divergent = recent.back() >= recent.front() * (1.0 - 1e-12);
  return out;
}

}  // namespace dbarlab
