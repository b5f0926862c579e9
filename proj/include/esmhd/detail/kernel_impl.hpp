#pragma once

#include "esmhd/detail/typed_ops.hpp"
#include "esmhd/kernels.hpp"

// Shared generic bodies for the batched kernels; S is double in the scalar
// translation unit and a 4-wide simd pack in the AVX2 one.

namespace esmhd::kernels::detail {

using esmhd::detail::EcSide;
using esmhd::detail::State9T;

// w from the stored per-node quantities; mirrors entropy_vars().
template <class S>
State9T<S> entropy_vars_core(const S& v1, const S& v2, const S& v3, const S& T, const S& B1,
                             const S& B2, const S& B3, const S& psi, const S& s,
                             const GasParams& gas) {
  const S invT = S(1.0) / T;
  State9T<S> w;
  w[IRHO] = S(gas.gamma * gas.R / (gas.gamma - 1.0)) - s -
            S(0.5) * (v1 * v1 + v2 * v2 + v3 * v3) * invT;
  w[IMX] = v1 * invT;
  w[IMY] = v2 * invT;
  w[IMZ] = v3 * invT;
  w[IE] = S(-1.0) * invT;
  w[IBX] = B1 / S(gas.mu0) * invT;
  w[IBY] = B2 / S(gas.mu0) * invT;
  w[IBZ] = B3 / S(gas.mu0) * invT;
  w[IPSI] = psi / S(gas.mu0) * invT;
  return w;
}

inline EcSide<double> load_side(const NodeBatch& b, int k) {
  return {b.rho[k], b.v1[k], b.v2[k],     b.v3[k],     b.B1[k], b.B2[k],
          b.B3[k],  b.psi[k], b.beta[k],  b.ln_rho[k], b.ln_beta[k]};
}

}  // namespace esmhd::kernels::detail
