// AVX2 variants of the batched kernels, 4-wide via std::experimental::simd.
// Compiled with -mavx2 and only dispatched to when the CPU supports it.
// Lane arithmetic follows the exact operation order of the scalar kernels,
// and pair contributions are accumulated lane by lane in scalar order, so
// results match the scalar backend bitwise.

#if defined(ESMHD_HAVE_AVX2_TU)

#include <experimental/simd>

namespace stdx = std::experimental;
using pack4 = stdx::fixed_size_simd<double, 4>;

#include "esmhd/detail/typed_ops.hpp"

namespace esmhd::detail {
template <>
struct BranchOps<pack4> {
  static pack4 select_lt_abs(const pack4& x, double tol, const pack4& a, const pack4& b) {
    pack4 r = b;
    stdx::where(stdx::abs(x) < pack4(tol), r) = a;
    return r;
  }
};
}  // namespace esmhd::detail

#include "esmhd/detail/kernel_impl.hpp"

namespace esmhd::kernels {

namespace {

pack4 load_lanes(const std::vector<double>& v, int k, int count) {
  // Partial loads replicate the last valid lane; surplus lanes are discarded
  // by the caller before accumulation.
  alignas(32) double tmp[4];
  for (int l = 0; l < 4; ++l) tmp[l] = v[k + std::min(l, count - 1)];
  pack4 p;
  p.copy_from(tmp, stdx::vector_aligned);
  return p;
}

detail::EcSide<pack4> load_side_pack(const NodeBatch& b, int k, int count) {
  return {load_lanes(b.rho, k, count), load_lanes(b.v1, k, count),  load_lanes(b.v2, k, count),
          load_lanes(b.v3, k, count),  load_lanes(b.B1, k, count),  load_lanes(b.B2, k, count),
          load_lanes(b.B3, k, count),  load_lanes(b.psi, k, count), load_lanes(b.beta, k, count),
          load_lanes(b.ln_rho, k, count), load_lanes(b.ln_beta, k, count)};
}

detail::EcSide<pack4> broadcast_side(const detail::EcSide<double>& s) {
  return {pack4(s.rho), pack4(s.v1),  pack4(s.v2),     pack4(s.v3),
          pack4(s.B1),  pack4(s.B2),  pack4(s.B3),     pack4(s.psi),
          pack4(s.beta), pack4(s.ln_rho), pack4(s.ln_beta)};
}

}  // namespace

void entropy_vars_batch_avx2(const NodeBatch& b, const GasParams& gas, State9* out) {
  for (int k = 0; k < b.n; k += 4) {
    const int count = std::min(4, b.n - k);
    const auto w = detail::entropy_vars_core<pack4>(
        load_lanes(b.v1, k, count), load_lanes(b.v2, k, count), load_lanes(b.v3, k, count),
        load_lanes(b.T, k, count), load_lanes(b.B1, k, count), load_lanes(b.B2, k, count),
        load_lanes(b.B3, k, count), load_lanes(b.psi, k, count), load_lanes(b.s, k, count), gas);
    for (int l = 0; l < count; ++l)
      for (int c = 0; c < 9; ++c) out[k + l][c] = w[c][l];
  }
}

void element_volume_term_avx2(const NodeBatch& b, int first, int n_nodes, const double* Q,
                              const GasParams& gas, double c_h, State9* out) {
  for (int j = 0; j < n_nodes; ++j) {
    const auto side_j = broadcast_side(detail::load_side(b, first + j));
    State9 acc = out[j];
    for (int k = 0; k < n_nodes; k += 4) {
      const int count = std::min(4, n_nodes - k);
      const auto f = esmhd::detail::nonsym_flux_core(side_j, load_side_pack(b, first + k, count),
                                                     gas, c_h);
      for (int l = 0; l < count; ++l) {
        const double q2 = 2.0 * Q[j * n_nodes + k + l];
        for (int c = 0; c < 9; ++c) acc[c] += q2 * f[c][l];
      }
    }
    out[j] = acc;
  }
}

}  // namespace esmhd::kernels

#endif  // ESMHD_HAVE_AVX2_TU
