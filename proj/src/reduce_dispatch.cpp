#include <atomic>

#include "dbarlab/simd/reduce.hpp"

namespace dbarlab::reduce {

namespace {
std::atomic<Impl> g_requested{Impl::Auto};
}

bool avx2_supported() {
#if defined(DBARLAB_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void set_impl(Impl impl) {
  if (impl == Impl::Avx2 && !avx2_supported())
    throw data_error("simd: avx2 requested but not available on this machine/build");
  g_requested.store(impl);
}

Impl active_impl() {
  const Impl req = g_requested.load();
  if (req == Impl::Scalar) return Impl::Scalar;
  if (req == Impl::Avx2) return Impl::Avx2;
  return avx2_supported() ? Impl::Avx2 : Impl::Scalar;
}

std::string impl_name() { return active_impl() == Impl::Avx2 ? "avx2" : "scalar"; }

cplx henkin_sum_second(const BoundarySoA& nodes, const DensitySoA& dens, const C2& z, const Cut& cut) {
#if defined(DBARLAB_BUILD_AVX2)
  if (active_impl() == Impl::Avx2) return avx2::henkin_sum_second(nodes, dens, z, cut);
#endif
  return scalar::henkin_sum_second(nodes, dens, z, cut);
}

cplx henkin_sum_first(const BoundarySoA& nodes, const DensitySoA& dens, const C2& p, cplx gp1, cplx gp2,
                      const Cut& cut) {
#if defined(DBARLAB_BUILD_AVX2)
  if (active_impl() == Impl::Avx2) return avx2::henkin_sum_first(nodes, dens, p, gp1, gp2, cut);
#endif
  return scalar::henkin_sum_first(nodes, dens, p, gp1, gp2, cut);
}

cplx bm_volume_sum(const VolumeSoA& nodes, const C2& z, const R4& inv_axes) {
#if defined(DBARLAB_BUILD_AVX2)
  if (active_impl() == Impl::Avx2) return avx2::bm_volume_sum(nodes, z, inv_axes);
#endif
  return scalar::bm_volume_sum(nodes, z, inv_axes);
}

}  // namespace dbarlab::reduce
