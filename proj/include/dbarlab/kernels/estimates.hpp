#pragma once

#include <vector>

#include "dbarlab/geometry/domain.hpp"

namespace dbarlab {

// One sampled instance of the support-function lower bounds. lhs/rhs are the
// two sides of the applicable bullet; ratio = lhs/rhs carries +inf when the
// bound degenerates to 0 (excluded from min-ratio statistics).
struct EstimateSample {
  C2 zeta, z;
  int k = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  enum class Branch { NearFirst, Split } branch = Branch::NearFirst;
};

// ComplexModel bound: requires F'(0)=0, rho(zeta) >= rho(z), both points in
// the neighborhood |rho| <= nbhd, zeta != z.
EstimateSample lemma_complex_check(const ModelDomain& domain, const C2& zeta, const C2& z, int k,
                                   double nbhd);

// RealModel analogue, branching on |xi1| vs |x1 - xi1|.
EstimateSample lemma_real_check(const ModelDomain& domain, const C2& zeta, const C2& z, int k,
                                double nbhd);

// Seeded sampler of admissible pairs near the distinguished boundary point:
// z1 in the disc |z1| < delta, z2 found on a level |rho| <= nbhd by ray root
// finding in the z2-plane, pairs swapped so rho(zeta) >= rho(z).
std::vector<std::pair<C2, C2>> sample_lemma_pairs(const ModelDomain& domain, std::size_t count,
                                                  double nbhd, std::uint64_t seed);

struct LemmaScanResult {
  std::vector<EstimateSample> samples;
  double min_ratio = 0.0;   // over finite ratios
  double max_ratio = 0.0;
  std::size_t degenerate = 0;  // +inf sentinels
};

LemmaScanResult lemma_scan(const ModelDomain& domain, int k, std::size_t count, double nbhd,
                           std::uint64_t seed);

}  // namespace dbarlab
