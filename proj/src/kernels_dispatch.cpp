#include "esmhd/kernels.hpp"

namespace esmhd::kernels {

namespace {
std::optional<Backend> g_override;
}

bool avx2_supported() {
#if defined(ESMHD_HAVE_AVX2_TU) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_backend_override(std::optional<Backend> b) {
  if (b == Backend::avx2 && !avx2_supported())
    throw ConfigError("avx2 backend requested but not available");
  g_override = b;
}

Backend active_backend() {
  if (g_override) return *g_override;
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

void entropy_vars_batch(const NodeBatch& nodes, const GasParams& gas, State9* out) {
#if defined(ESMHD_HAVE_AVX2_TU)
  if (active_backend() == Backend::avx2) {
    entropy_vars_batch_avx2(nodes, gas, out);
    return;
  }
#endif
  entropy_vars_batch_scalar(nodes, gas, out);
}

void element_volume_term(const NodeBatch& nodes, int first, int n_nodes, const double* Q,
                         const GasParams& gas, double c_h, State9* out) {
#if defined(ESMHD_HAVE_AVX2_TU)
  if (active_backend() == Backend::avx2) {
    element_volume_term_avx2(nodes, first, n_nodes, Q, gas, c_h, out);
    return;
  }
#endif
  element_volume_term_scalar(nodes, first, n_nodes, Q, gas, c_h, out);
}

}  // namespace esmhd::kernels
