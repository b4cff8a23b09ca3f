#include "arbor/kernels.hpp"

namespace arbor::kernel {

#if defined(ARBOR_HAVE_AVX2)
bool avx2_available();
Fn avx2_kernel_fn();
#endif
#if defined(ARBOR_HAVE_NEON)
Fn neon_kernel_fn();
#endif

bool simd_supported() {
#if defined(ARBOR_HAVE_AVX2)
  return avx2_available();
#elif defined(ARBOR_HAVE_NEON)
  return true;
#else
  return false;
#endif
}

const char* simd_name() {
#if defined(ARBOR_HAVE_AVX2)
  return avx2_available() ? "avx2" : "none";
#elif defined(ARBOR_HAVE_NEON)
  return "neon";
#else
  return "none";
#endif
}

Fn simd_fn() {
#if defined(ARBOR_HAVE_AVX2)
  return avx2_available() ? avx2_kernel_fn() : nullptr;
#elif defined(ARBOR_HAVE_NEON)
  return neon_kernel_fn();
#else
  return nullptr;
#endif
}

Fn best_fn() {
  Fn f = simd_fn();
  return f ? f : scalar_fn();
}

const char* best_name() { return simd_fn() ? simd_name() : "scalar"; }

}  // namespace arbor::kernel
