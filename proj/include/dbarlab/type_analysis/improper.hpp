#pragma once

#include <functional>

#include "dbarlab/core.hpp"

namespace dbarlab {

// Improper integral int_0^d g(t) dt with a possible singularity at 0,
// evaluated over dyadic shells t in [d 2^{-n-1}, d 2^{-n}]. Work happens in
// log coordinates: the caller supplies log h(tau) where h(tau) = t g(t),
// t = d e^{-tau}, so flat-profile integrands stay representable far past the
// range of double.
//
// Divergence is declared when the last 5 shell sums are non-decreasing and
// the running total exceeds 1e6 x the head shell, or when the shell decay
// fits a tail exponent <= 1 (harmonic tails diverge with decreasing shells;
// the first rule alone cannot see them).
struct ShellIntegral {
  double value = 0.0;
  bool divergent = false;
  std::size_t shells = 0;
};

struct ShellOptions {
  double rel_tail_tol = 1e-9;
  std::size_t max_shells = 1'500'000;
  double head_blowup = 1e6;
  int gauss_per_shell = 8;
};

ShellIntegral integrate_dyadic_to_zero(const std::function<double(double)>& log_h,
                                       const ShellOptions& opts = {});

}  // namespace dbarlab
