#include <cmath>

#include "esmhd/detail/kernel_impl.hpp"

namespace esmhd::kernels {

void NodeBatch::resize(int count) {
  n = count;
  for (auto* v : {&rho, &v1, &v2, &v3, &T, &B1, &B2, &B3, &psi, &beta, &ln_rho, &ln_beta, &s})
    v->assign(count, 0.0);
}

void NodeBatch::set(int k, const PrimState& v, const GasParams& gas) {
  rho[k] = v.rho;
  v1[k] = v.v[0];
  v2[k] = v.v[1];
  v3[k] = v.v[2];
  T[k] = v.T;
  B1[k] = v.B[0];
  B2[k] = v.B[1];
  B3[k] = v.B[2];
  psi[k] = v.psi;
  const double p = v.rho * gas.R * v.T;
  beta[k] = v.rho / p;
  ln_rho[k] = std::log(v.rho);
  ln_beta[k] = std::log(beta[k]);
  s[k] = gas.R / (gas.gamma - 1.0) * std::log(v.T / gas.T_ref) -
         gas.R * std::log(v.rho / gas.rho_ref);
}

PrimState NodeBatch::get(int k) const {
  return {rho[k], {v1[k], v2[k], v3[k]}, T[k], {B1[k], B2[k], B3[k]}, psi[k]};
}

void entropy_vars_batch_scalar(const NodeBatch& b, const GasParams& gas, State9* out) {
  for (int k = 0; k < b.n; ++k)
    out[k] = detail::entropy_vars_core<double>(b.v1[k], b.v2[k], b.v3[k], b.T[k], b.B1[k],
                                               b.B2[k], b.B3[k], b.psi[k], b.s[k], gas);
}

void element_volume_term_scalar(const NodeBatch& b, int first, int n_nodes, const double* Q,
                                const GasParams& gas, double c_h, State9* out) {
  for (int j = 0; j < n_nodes; ++j) {
    const auto side_j = detail::load_side(b, first + j);
    State9 acc = out[j];
    for (int k = 0; k < n_nodes; ++k) {
      const double q2 = 2.0 * Q[j * n_nodes + k];
      const auto f = esmhd::detail::nonsym_flux_core(side_j, detail::load_side(b, first + k),
                                                     gas, c_h);
      for (int c = 0; c < 9; ++c) acc[c] += q2 * f[c];
    }
    out[j] = acc;
  }
}

}  // namespace esmhd::kernels
