#include "dbarlab/operators/forms.hpp"

#include <random>

namespace dbarlab {

double dbar_closed_residual(const Form01& phi, const C2& z, double h) {
  auto wirt_bar = [&](const std::function<cplx(const C2&)>& f, int slot) {
    C2 ex = slot == 1 ? C2{{1, 0}, {0, 0}} : C2{{0, 0}, {1, 0}};
    C2 ey = slot == 1 ? C2{{0, 1}, {0, 0}} : C2{{0, 0}, {0, 1}};
    const cplx fx = (f(z + h * ex) - f(z - h * ex)) / (2.0 * h);
    const cplx fy = (f(z + h * ey) - f(z - h * ey)) / (2.0 * h);
    return 0.5 * (fx + cplx(0, 1) * fy);
  };
  const cplx d12 = phi.c1 ? wirt_bar(phi.c1, 2) : cplx{0, 0};
  const cplx d21 = phi.c2 ? wirt_bar(phi.c2, 1) : cplx{0, 0};
  return std::abs(d12 - d21);
}

ExactPair random_dbar_exact_form(std::uint64_t seed, double amplitude) {
  // basis of potentials with hand-differentiated dbar
  struct Item {
    std::function<cplx(const C2&)> g, p1, p2;
  };
  static const std::vector<Item> basis = {
      {[](const C2& z) { return std::conj(z.z1); },
       [](const C2&) { return cplx{1, 0}; },
       [](const C2&) { return cplx{0, 0}; }},
      {[](const C2& z) { return std::conj(z.z2); },
       [](const C2&) { return cplx{0, 0}; },
       [](const C2&) { return cplx{1, 0}; }},
      {[](const C2& z) { return std::conj(z.z1) * std::conj(z.z2); },
       [](const C2& z) { return std::conj(z.z2); },
       [](const C2& z) { return std::conj(z.z1); }},
      {[](const C2& z) { return z.z1 * std::conj(z.z1); },
       [](const C2& z) { return z.z1; },
       [](const C2&) { return cplx{0, 0}; }},
      {[](const C2& z) { return z.z2 * std::conj(z.z2); },
       [](const C2&) { return cplx{0, 0}; },
       [](const C2& z) { return z.z2; }},
      {[](const C2& z) { return z.z2 * std::conj(z.z1); },
       [](const C2& z) { return z.z2; },
       [](const C2&) { return cplx{0, 0}; }},
      {[](const C2& z) { return z.z1 * std::conj(z.z2); },
       [](const C2&) { return cplx{0, 0}; },
       [](const C2& z) { return z.z1; }},
      {[](const C2& z) { return std::conj(z.z1) * std::conj(z.z1); },
       [](const C2& z) { return 2.0 * std::conj(z.z1); },
       [](const C2&) { return cplx{0, 0}; }},
      {[](const C2& z) { return std::conj(z.z2) * std::conj(z.z2); },
       [](const C2&) { return cplx{0, 0}; },
       [](const C2& z) { return 2.0 * std::conj(z.z2); }},
  };

  std::mt19937_64 eng(seed);
  std::vector<cplx> coef(basis.size());
  for (auto& c : coef)
    c = amplitude * cplx(uniform(eng, -1.0, 1.0), uniform(eng, -1.0, 1.0));

  ExactPair out;
  out.g = [coef](const C2& z) {
    cplx s{0, 0};
    for (std::size_t k = 0; k < basis.size(); ++k) s += coef[k] * basis[k].g(z);
    return s;
  };
  out.phi.c1 = [coef](const C2& z) {
    cplx s{0, 0};
    for (std::size_t k = 0; k < basis.size(); ++k) s += coef[k] * basis[k].p1(z);
    return s;
  };
  out.phi.c2 = [coef](const C2& z) {
    cplx s{0, 0};
    for (std::size_t k = 0; k < basis.size(); ++k) s += coef[k] * basis[k].p2(z);
    return s;
  };
  return out;
}

}  // namespace dbarlab
