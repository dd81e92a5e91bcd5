#include "dbarlab/kernels/estimates.hpp"

#include <cmath>
#include <random>

#include "dbarlab/kernels/support.hpp"

namespace dbarlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_admissible(const ModelDomain& domain, const C2& zeta, const C2& z, double nbhd) {
  if (domain.f_type().d1(0.0) > 1e-12)
    throw precondition_error("lemma check: profile is strictly convex (F'(0) != 0)");
  domain.require_in_chart(zeta);
  domain.require_in_chart(z);
  if (std::abs(domain.rho(zeta)) > nbhd || std::abs(domain.rho(z)) > nbhd)
    throw precondition_error("lemma check: points not in the boundary neighborhood");
  if (domain.rho(zeta) - domain.rho(z) < 0.0)
    throw precondition_error("lemma check: rho(zeta) - rho(z) < 0");
  if (norm2(zeta - z) < 1e-300) throw precondition_error("lemma check: zeta == z");
  if (!(0.0 < nbhd)) throw precondition_error("lemma check: nbhd must be positive");
}

double powk(double base, int k) { return k == 1 ? base : base * base; }

}  // namespace

EstimateSample lemma_complex_check(const ModelDomain& domain, const C2& zeta, const C2& z, int k,
                                   double nbhd) {
  if (domain.setting() != Setting::ComplexModel)
    throw unsupported_setting_error("lemma_complex_check: ComplexModel only");
  if (k != 1 && k != 2) throw precondition_error("lemma check: k in {1,2}");
  require_admissible(domain, zeta, z, nbhd);

  const FType& f = domain.f_type();
  const cplx phi = support_phi(domain, zeta, z);
  const double core = std::abs(phi.imag()) + (domain.rho(zeta) - domain.rho(z));

  EstimateSample s;
  s.zeta = zeta;
  s.z = z;
  s.k = k;
  s.lhs = powk(std::abs(phi), k) * dist(z, zeta);

  const double a_zeta = std::abs(zeta.z1);
  const double a_diff = std::abs(z.z1 - zeta.z1);
  if (a_zeta >= a_diff) {
    s.branch = EstimateSample::Branch::NearFirst;
    s.rhs = powk(core + f.eval(a_diff * a_diff), k) * a_diff;
  } else {
    s.branch = EstimateSample::Branch::Split;
    const double a_z = std::abs(z.z1);
    s.rhs = powk(core + f.eval(0.5 * a_zeta * a_zeta), k) * a_zeta +
            powk(core + f.eval(0.5 * a_z * a_z), k) * a_z;
  }
  s.ratio = s.rhs > 0.0 ? s.lhs / s.rhs : kInf;
  return s;
}

EstimateSample lemma_real_check(const ModelDomain& domain, const C2& zeta, const C2& z, int k,
                                double nbhd) {
  if (domain.setting() != Setting::RealModel)
    throw unsupported_setting_error("lemma_real_check: RealModel only");
  if (k != 1 && k != 2) throw precondition_error("lemma check: k in {1,2}");
  require_admissible(domain, zeta, z, nbhd);

  const FType& f = domain.f_type();
  const cplx phi = support_phi(domain, zeta, z);
  const double core = std::abs(phi.imag()) + (domain.rho(zeta) - domain.rho(z));

  const double xi1 = zeta.z1.real(), eta1 = zeta.z1.imag();
  const double x1 = z.z1.real(), y1 = z.z1.imag();
  const double dy = std::abs(y1 - eta1);

  EstimateSample s;
  s.zeta = zeta;
  s.z = z;
  s.k = k;
  s.lhs = powk(std::abs(phi), k) * dist(z, zeta);

  const double dx = std::abs(x1 - xi1);
  if (std::abs(xi1) >= dx) {
    s.branch = EstimateSample::Branch::NearFirst;
    s.rhs = powk(core + f.eval(dx * dx), k) * (dx + dy);
  } else {
    s.branch = EstimateSample::Branch::Split;
    s.rhs = powk(core + f.eval(0.5 * xi1 * xi1), k) * (std::abs(xi1) + dy) +
            powk(core + f.eval(0.5 * x1 * x1), k) * (std::abs(x1) + dy);
  }
  s.ratio = s.rhs > 0.0 ? s.lhs / s.rhs : kInf;
  return s;
}

std::vector<std::pair<C2, C2>> sample_lemma_pairs(const ModelDomain& domain, std::size_t count,
                                                  double nbhd, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  const double delta = std::min(domain.delta(), 0.95 * domain.f_type().valid_radius());
  const cplx slice_center = domain.anchor().z2;

  // Aim rays at the distinguished point's z2 (the model origin).
  const cplx base_dir = -slice_center / std::abs(slice_center);
  const double arc = std::min(1.5 * std::abs(delta / slice_center), 1.0);

  auto draw_point = [&]() -> std::optional<C2> {
    const double rr = delta * std::sqrt(uniform01(eng));
    const double th = 2.0 * std::numbers::pi * uniform01(eng);
    const cplx z1 = rr * cplx(std::cos(th), std::sin(th));
    const double level = uniform(eng, -nbhd, nbhd);
    const double psi = uniform(eng, -arc, arc);
    const cplx dir = base_dir * cplx(std::cos(psi), std::sin(psi));

    // root of rho(z1, slice_center + s dir) = level, s > 0
    auto val = [&](double s) { return domain.rho(C2{z1, slice_center + s * dir}) - level; };
    if (val(0.0) >= 0.0) return std::nullopt;
    double lo = 0.0, hi = std::abs(slice_center);
    int guard = 0;
    while (val(hi) < 0.0) {
      lo = hi;
      hi *= 1.5;
      if (++guard > 40) return std::nullopt;
    }
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (val(mid) < 0.0 ? lo : hi) = mid;
    }
    C2 p{z1, slice_center + 0.5 * (lo + hi) * dir};
    if (!domain.in_chart(p) || std::abs(domain.rho(p)) > nbhd) return std::nullopt;
    return p;
  };

  std::vector<std::pair<C2, C2>> pairs;
  pairs.reserve(count);
  std::size_t guard = 0;
  while (pairs.size() < count && guard < 200 * count + 1000) {
    ++guard;
    auto a = draw_point();
    auto b = draw_point();
    if (!a || !b) continue;
    if (norm2(*a - *b) < 1e-24) continue;
    if (domain.rho(*a) >= domain.rho(*b))
      pairs.emplace_back(*a, *b);
    else
      pairs.emplace_back(*b, *a);
  }
  if (pairs.size() < count)
    throw geometry_error("sample_lemma_pairs: admissible patch too small for requested count");
  return pairs;
}

LemmaScanResult lemma_scan(const ModelDomain& domain, int k, std::size_t count, double nbhd,
                           std::uint64_t seed) {
  LemmaScanResult res;
  res.samples.reserve(count);
  res.min_ratio = kInf;
  auto pairs = sample_lemma_pairs(domain, count, nbhd, seed);
  for (const auto& [zeta, z] : pairs) {
    EstimateSample s = domain.setting() == Setting::ComplexModel
                           ? lemma_complex_check(domain, zeta, z, k, nbhd)
                           : lemma_real_check(domain, zeta, z, k, nbhd);
    if (std::isinf(s.ratio)) {
      ++res.degenerate;
    } else {
      res.min_ratio = std::min(res.min_ratio, s.ratio);
      res.max_ratio = std::max(res.max_ratio, s.ratio);
    }
    res.samples.push_back(s);
  }
  return res;
}

}  // namespace dbarlab
