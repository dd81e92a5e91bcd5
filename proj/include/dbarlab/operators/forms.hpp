#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dbarlab/geometry/grids.hpp"

namespace dbarlab {

// (0,1)-form phi = c1 dzbar1 + c2 dzbar2 given by coefficient functions.
struct Form01 {
  std::function<cplx(const C2&)> c1;
  std::function<cplx(const C2&)> c2;

  cplx eval1(const C2& z) const { return c1 ? c1(z) : cplx{0, 0}; }
  cplx eval2(const C2& z) const { return c2 ? c2(z) : cplx{0, 0}; }
  double magnitude(const C2& z) const {
    return std::sqrt(std::norm(eval1(z)) + std::norm(eval2(z)));
  }

  static Form01 zero() { return Form01{nullptr, nullptr}; }
};

// FD residual of dbar-closedness |d c1/dzbar2 - d c2/dzbar1| at z.
double dbar_closed_residual(const Form01& phi, const C2& z, double h = 1e-5);

enum class Provenance { HenkinInterior, ShawBoundary, PlPotential };

struct SolutionField {
  std::function<cplx(const C2&)> evaluator;
  Provenance provenance = Provenance::HenkinInterior;
  double epsilon = 0.0;  // regularization scale, 0 if none

  cplx operator()(const C2& z) const { return evaluator(z); }
};

// Seeded dbar-exact test data: phi = dbar(g) for g drawn from a fixed
// polynomial basis in (z, zbar). Exactness makes phi closed and compatible.
struct ExactPair {
  std::function<cplx(const C2&)> g;  // potential, phi = dbar g
  Form01 phi;
};
ExactPair random_dbar_exact_form(std::uint64_t seed, double amplitude = 1.0);

}  // namespace dbarlab
