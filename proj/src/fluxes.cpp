#include "esmhd/fluxes.hpp"

#include <cmath>

#include "esmhd/detail/typed_ops.hpp"

namespace esmhd {

namespace {

detail::PrimT<double> as_prim_t(const PrimState& v) {
  return {v.rho, v.v[0], v.v[1], v.v[2], v.T, v.B[0], v.B[1], v.B[2], v.psi};
}

detail::EcSide<double> as_ec_side(const PrimState& v, const GasParams& gas) {
  validate(v);
  const double p = v.rho * gas.R * v.T;
  const double beta = v.rho / p;
  return {v.rho,  v.v[0], v.v[1],        v.v[2],        v.B[0], v.B[1],
          v.B[2], v.psi,  beta,          std::log(v.rho), std::log(beta)};
}

State9 to_state9(const detail::State9T<double>& a) { return a; }

}  // namespace

State9 advective_flux_x(const PrimState& v, const GasParams& gas, const GlmParams& glm) {
  validate(v);
  return to_state9(detail::advective_flux_x_core(as_prim_t(v), gas, glm.c_h));
}

State9 advective_flux_x(const ConsState& u, const GasParams& gas, const GlmParams& glm) {
  return advective_flux_x(cons_to_prim(u, gas), gas, glm);
}

State9 powell_phi(const PrimState& v, const GasParams& gas) {
  return to_state9(detail::powell_phi_core(as_prim_t(v), gas));
}

State9 glm_phi(const PrimState& v, const GasParams& gas) {
  return to_state9(detail::glm_phi_core(as_prim_t(v), gas));
}

State9 viscous_flux_x(const PrimState& v, const State9& theta_x, const GasParams& gas) {
  return to_state9(detail::viscous_flux_x_core(as_prim_t(v), theta_x, gas));
}

Mat9 cnu_matrix(const PrimState& v, const GasParams& gas) {
  validate(v);
  // Coefficient matrix K of the viscous flux with respect to the primitive
  // gradient, composed with dv/dw: C = K [dv/dw].
  Mat9 K;
  const double imu0 = 1.0 / gas.mu0;
  K(IMX, IMX) = gas.mu_ns * 4.0 / 3.0;
  K(IMY, IMY) = gas.mu_ns;
  K(IMZ, IMZ) = gas.mu_ns;
  K(IE, IMX) = gas.mu_ns * 4.0 / 3.0 * v.v[0];
  K(IE, IMY) = gas.mu_ns * v.v[1];
  K(IE, IMZ) = gas.mu_ns * v.v[2];
  K(IE, IE) = gas.kappa;
  K(IE, IBY) = gas.mu_r * imu0 * imu0 * v.B[1];
  K(IE, IBZ) = gas.mu_r * imu0 * imu0 * v.B[2];
  K(IBY, IBY) = gas.mu_r * imu0;
  K(IBZ, IBZ) = gas.mu_r * imu0;
  return K * dvdw_jacobian(v, gas);
}

double logarithmic_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw NonPositiveInput("logarithmic_mean");
  return detail::logmean_core(a, b, std::log(a), std::log(b));
}

State9 ec_two_point_flux(const PrimState& vi, const PrimState& vj, const GasParams& gas,
                         const GlmParams& glm) {
  return to_state9(detail::ec_flux_core(as_ec_side(vi, gas), as_ec_side(vj, gas), gas, glm.c_h));
}

State9 nonsym_flux(const PrimState& vi, const PrimState& vj, const GasParams& gas,
                   const GlmParams& glm) {
  return to_state9(detail::nonsym_flux_core(as_ec_side(vi, gas), as_ec_side(vj, gas), gas, glm.c_h));
}

double entropy_potential(const PrimState& v, const GasParams& gas, const GlmParams& glm) {
  const State9 w = entropy_vars(v, gas).w;
  const State9 fstar = nonsym_flux(v, v, gas, glm);
  return dot(w, fstar) - entropy_flux(v, gas);
}

Mat9 h_matrix(const PrimState& vi, const PrimState& vj, const GasParams& gas) {
  validate(vi);
  validate(vj);
  const auto avg = [](double x, double y) { return 0.5 * (x + y); };
  const double pi_ = vi.rho * gas.R * vi.T, pj_ = vj.rho * gas.R * vj.T;
  const double beta_i = vi.rho / pi_, beta_j = vj.rho / pj_;
  const double rho_ln = logarithmic_mean(vi.rho, vj.rho);
  const double beta_ln = logarithmic_mean(beta_i, beta_j);
  const double um = avg(vi.v[0], vj.v[0]), vm = avg(vi.v[1], vj.v[1]), wm = avg(vi.v[2], vj.v[2]);
  const double p_bar = avg(vi.rho, vj.rho) / avg(beta_i, beta_j);
  const double tau = 1.0 / avg(beta_i, beta_j);
  const double vsq_bar = avg(norm2(vi.v), norm2(vj.v));
  const double E_bar = rho_ln / ((gas.gamma - 1.0) * beta_ln) +
                       rho_ln * (um * um + vm * vm + wm * wm) - rho_ln * 0.5 * vsq_bar;
  const double B1m = avg(vi.B[0], vj.B[0]), B2m = avg(vi.B[1], vj.B[1]), B3m = avg(vi.B[2], vj.B[2]);
  const double psim = avg(vi.psi, vj.psi);

  Mat9 H;
  const double vmean[3] = {um, vm, wm};
  H(IRHO, IRHO) = rho_ln;
  for (int d = 0; d < 3; ++d) {
    H(IRHO, IMX + d) = rho_ln * vmean[d];
    H(IMX + d, IRHO) = rho_ln * vmean[d];
  }
  H(IRHO, IE) = E_bar;
  H(IE, IRHO) = E_bar;
  for (int d = 0; d < 3; ++d)
    for (int e = 0; e < 3; ++e) {
      H(IMX + d, IMX + e) = rho_ln * vmean[d] * vmean[e];
      if (d == e) H(IMX + d, IMX + e) += p_bar;
    }
  for (int d = 0; d < 3; ++d) {
    H(IMX + d, IE) = (E_bar + p_bar) * vmean[d];
    H(IE, IMX + d) = (E_bar + p_bar) * vmean[d];
  }
  const double Bmean[3] = {B1m, B2m, B3m};
  for (int d = 0; d < 3; ++d) {
    H(IE, IBX + d) = tau * Bmean[d];
    H(IBX + d, IE) = tau * Bmean[d];
    H(IBX + d, IBX + d) = tau * gas.mu0;
  }
  H(IE, IPSI) = tau * psim;
  H(IPSI, IE) = tau * psim;
  H(IPSI, IPSI) = tau * gas.mu0;
  // The gamma/(gamma-1) factor on tau E_bar makes H coincide with du/dw at
  // coincident states; it is required both for positive semi-definiteness
  // and for the first-order energy-jump consistency.
  H(IE, IE) = 0.5 * (um * um + vm * vm + wm * wm) * (E_bar + p_bar) +
              tau * (gas.gamma / (gas.gamma - 1.0) * E_bar +
                     (B1m * B1m + B2m * B2m + B3m * B3m) / gas.mu0 +
                     psim * psim / gas.mu0);
  for (int i = 0; i < 81; ++i) H.a[i] /= gas.R;
  return H;
}

double max_wave_speed(const PrimState& vi, const PrimState& vj, const GasParams& gas,
                      const GlmParams& glm) {
  const auto signal = [&gas](const PrimState& v) {
    validate(v);
    const double p = v.rho * gas.R * v.T;
    const double a2 = gas.gamma * p / v.rho;
    const double b2 = norm2(v.B) / (gas.mu0 * v.rho);
    const double bx2 = v.B[0] * v.B[0] / (gas.mu0 * v.rho);
    const double s = a2 + b2;
    const double disc = std::sqrt(std::max(s * s - 4.0 * a2 * bx2, 0.0));
    const double cf = std::sqrt(0.5 * (s + disc));
    return std::abs(v.v[0]) + cf;
  };
  return std::max({signal(vi), signal(vj), glm.c_h});
}

State9 llf_dissipation(const PrimState& vi, const PrimState& vj, const GasParams& gas,
                       const GlmParams& glm) {
  const double lam = max_wave_speed(vi, vj, gas, glm);
  const State9 jump = entropy_vars(vj, gas).w - entropy_vars(vi, gas).w;
  return 0.5 * lam * (h_matrix(vi, vj, gas) * jump);
}

State9 viscous_interface_dissipation(const PrimState& vi, const PrimState& vj,
                                     const State9& w_jump, const GasParams& gas,
                                     const DissParams& diss) {
  if (diss.beta_visc == 0.0) return State9{};
  const Mat9 ci = cnu_matrix(vi, gas);
  const Mat9 cj = cnu_matrix(vj, gas);
  Mat9 L;
  for (int i = 0; i < 81; ++i) L.a[i] = 0.5 * diss.beta_visc * (ci.a[i] + cj.a[i]);
  return L * w_jump;
}

State9 ec_two_point_flux(const ConsState& ui, const ConsState& uj, const GasParams& gas,
                         const GlmParams& glm) {
  return ec_two_point_flux(cons_to_prim(ui, gas), cons_to_prim(uj, gas), gas, glm);
}

State9 nonsym_flux(const ConsState& ui, const ConsState& uj, const GasParams& gas,
                   const GlmParams& glm) {
  return nonsym_flux(cons_to_prim(ui, gas), cons_to_prim(uj, gas), gas, glm);
}

double entropy_potential(const ConsState& u, const GasParams& gas, const GlmParams& glm) {
  return entropy_potential(cons_to_prim(u, gas), gas, glm);
}

State9 llf_dissipation(const ConsState& ui, const ConsState& uj, const GasParams& gas,
                       const GlmParams& glm) {
  return llf_dissipation(cons_to_prim(ui, gas), cons_to_prim(uj, gas), gas, glm);
}

State9 source_term(const PrimState& v, const GasParams& gas, const GlmParams& glm) {
  return to_state9(
      detail::source_core(as_prim_t(v), gas, glm.alpha, glm.alpha_T, glm.T0, glm.rho0));
}

}  // namespace esmhd
