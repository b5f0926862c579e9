#pragma once

#include <optional>
#include <vector>

#include "esmhd/fluxes.hpp"

// Batched node kernels behind the residual assembly.  Two implementations
// are compiled: a scalar reference and an AVX2 one (std::experimental::simd,
// 4-wide); the active one is chosen at runtime from the CPU features and can
// be overridden for testing or from the run config.  Both share the same
// pointwise cores, and the pair accumulation order is identical, so their
// results agree bitwise.

namespace esmhd::kernels {

enum class Backend { scalar, avx2 };

bool avx2_supported();
Backend active_backend();
// nullopt restores automatic selection.
void set_backend_override(std::optional<Backend> b);

// Structure-of-arrays node storage with the derived per-node quantities the
// two-point kernels need (beta = rho/p, logs, specific entropy).
struct NodeBatch {
  int n = 0;
  std::vector<double> rho, v1, v2, v3, T, B1, B2, B3, psi, beta, ln_rho, ln_beta, s;

  void resize(int count);
  void set(int k, const PrimState& v, const GasParams& gas);
  PrimState get(int k) const;
};

// w_k for k in [0, nodes.n).
void entropy_vars_batch(const NodeBatch& nodes, const GasParams& gas, State9* out);

// out[j] += 2 sum_k Q[j*n_nodes+k] f*(first+j, first+k) for one element.
void element_volume_term(const NodeBatch& nodes, int first, int n_nodes, const double* Q,
                         const GasParams& gas, double c_h, State9* out);

// Explicit-backend entry points used by the equivalence tests.
void entropy_vars_batch_scalar(const NodeBatch&, const GasParams&, State9*);
void element_volume_term_scalar(const NodeBatch&, int, int, const double*, const GasParams&,
                                double, State9*);
#if defined(ESMHD_HAVE_AVX2_TU)
void entropy_vars_batch_avx2(const NodeBatch&, const GasParams&, State9*);
void element_volume_term_avx2(const NodeBatch&, int, int, const double*, const GasParams&,
                              double, State9*);
#endif

}  // namespace esmhd::kernels
