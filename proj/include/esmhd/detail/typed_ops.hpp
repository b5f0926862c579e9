#pragma once

#include <array>
#include <cmath>

#include "esmhd/thermo.hpp"

// Pointwise GLM-MHD expressions templated on the scalar type so the same
// formulas serve the double path, the SIMD packs, and the dual numbers used
// to build manufactured-solution forcings.

namespace esmhd {
namespace detail {

template <class S>
struct PrimT {
  S rho, v1, v2, v3, T, B1, B2, B3, psi;
};

template <class S>
using State9T = std::array<S, 9>;

// Branch customization point: (|x| < tol) ? a : b.  The SIMD translation
// unit specializes this to blend lanes.
template <class S>
struct BranchOps {
  static S select_lt_abs(const S& x, double tol, const S& a, const S& b) {
    return std::abs(x) < tol ? a : b;
  }
};

// Logarithmic mean (b - a)/(ln b - ln a) with the series branch for nearly
// coincident arguments; callers supply precomputed logs.
template <class S>
S logmean_core(const S& a, const S& b, const S& ln_a, const S& ln_b) {
  const S zeta = (a - b) / (a + b);
  const S z2 = zeta * zeta;
  const S series = (a + b) * S(0.5) / (S(1.0) + z2 * (S(1.0 / 3.0) + z2 * (S(0.2) + z2 * S(1.0 / 7.0))));
  const S direct = (b - a) / (ln_b - ln_a);
  return BranchOps<S>::select_lt_abs(zeta, 1e-4, series, direct);
}

template <class S>
S prim_pressure(const PrimT<S>& v, const GasParams& gas) {
  return v.rho * S(gas.R) * v.T;
}

template <class S>
State9T<S> cons_from_prim(const PrimT<S>& v, const GasParams& gas) {
  const S p = prim_pressure(v, gas);
  const S vsq = v.v1 * v.v1 + v.v2 * v.v2 + v.v3 * v.v3;
  const S Bsq = v.B1 * v.B1 + v.B2 * v.B2 + v.B3 * v.B3;
  State9T<S> u;
  u[IRHO] = v.rho;
  u[IMX] = v.rho * v.v1;
  u[IMY] = v.rho * v.v2;
  u[IMZ] = v.rho * v.v3;
  u[IE] = p / S(gas.gamma - 1.0) + S(0.5) * v.rho * vsq + S(0.5 / gas.mu0) * (Bsq + v.psi * v.psi);
  u[IBX] = v.B1;
  u[IBY] = v.B2;
  u[IBZ] = v.B3;
  u[IPSI] = v.psi;
  return u;
}

// Advective flux in x, split into Euler + ideal MHD + GLM columns.
template <class S>
State9T<S> advective_flux_x_core(const PrimT<S>& v, const GasParams& gas, double c_h) {
  const S p = prim_pressure(v, gas);
  const S vsq = v.v1 * v.v1 + v.v2 * v.v2 + v.v3 * v.v3;
  const S Bsq = v.B1 * v.B1 + v.B2 * v.B2 + v.B3 * v.B3;
  const S vdotB = v.v1 * v.B1 + v.v2 * v.B2 + v.v3 * v.B3;
  const double imu0 = 1.0 / gas.mu0;
  State9T<S> f;
  f[IRHO] = v.rho * v.v1;
  f[IMX] = v.rho * v.v1 * v.v1 + p + S(imu0) * (S(0.5) * Bsq - v.B1 * v.B1);
  f[IMY] = v.rho * v.v1 * v.v2 - S(imu0) * v.B1 * v.B2;
  f[IMZ] = v.rho * v.v1 * v.v3 - S(imu0) * v.B1 * v.B3;
  f[IE] = v.v1 * (S(0.5) * v.rho * vsq + S(gas.gamma / (gas.gamma - 1.0)) * p) +
          S(imu0) * (v.v1 * Bsq - v.B1 * vdotB) + S(c_h * imu0) * v.psi * v.B1;
  f[IBX] = S(c_h) * v.psi;
  f[IBY] = v.v1 * v.B2 - v.v2 * v.B1;
  f[IBZ] = v.v1 * v.B3 - v.v3 * v.B1;
  f[IPSI] = S(c_h) * v.B1;
  return f;
}

// Powell term direction vector phi^MHD = (0, B/mu0, v.B/mu0, v, 0).
template <class S>
State9T<S> powell_phi_core(const PrimT<S>& v, const GasParams& gas) {
  const double imu0 = 1.0 / gas.mu0;
  State9T<S> phi{};
  phi[IMX] = S(imu0) * v.B1;
  phi[IMY] = S(imu0) * v.B2;
  phi[IMZ] = S(imu0) * v.B3;
  phi[IE] = S(imu0) * (v.v1 * v.B1 + v.v2 * v.B2 + v.v3 * v.B3);
  phi[IBX] = v.v1;
  phi[IBY] = v.v2;
  phi[IBZ] = v.v3;
  phi[IPSI] = S(0.0);
  return phi;
}

// Galilean term direction vector phi^GLM = (0, 0, v1 psi/mu0, 0, v1).
template <class S>
State9T<S> glm_phi_core(const PrimT<S>& v, const GasParams& gas) {
  State9T<S> phi{};
  phi[IE] = S(1.0 / gas.mu0) * v.v1 * v.psi;
  phi[IPSI] = v.v1;
  return phi;
}

// Visco-resistive flux in x from the primitive-variable gradient theta.
template <class S>
State9T<S> viscous_flux_x_core(const PrimT<S>& v, const State9T<S>& theta, const GasParams& gas) {
  const double imu0 = 1.0 / gas.mu0;
  const S tau_xx = S(gas.mu_ns * 4.0 / 3.0) * theta[IMX];
  const S tau_yx = S(gas.mu_ns) * theta[IMY];
  const S tau_zx = S(gas.mu_ns) * theta[IMZ];
  State9T<S> f{};
  f[IMX] = tau_xx;
  f[IMY] = tau_yx;
  f[IMZ] = tau_zx;
  f[IE] = v.v1 * tau_xx + v.v2 * tau_yx + v.v3 * tau_zx + S(gas.kappa) * theta[IE] +
          S(gas.mu_r * imu0 * imu0) * (v.B2 * theta[IBY] + v.B3 * theta[IBZ]);
  f[IBY] = S(gas.mu_r * imu0) * theta[IBY];
  f[IBZ] = S(gas.mu_r * imu0) * theta[IBZ];
  return f;
}

// Divergence-cleaning damping source; pipe mode adds the energy relaxation
// -alpha_T rho0 (T - T0)/gamma.
template <class S>
State9T<S> source_core(const PrimT<S>& v, const GasParams& gas, double alpha, double alpha_T,
                       double T0, double rho0) {
  State9T<S> r{};
  r[IPSI] = S(-alpha) * v.psi;
  if (alpha_T != 0.0) r[IE] = S(-alpha_T * rho0 / gas.gamma) * (v.T - S(T0));
  return r;
}

// Per-side quantities entering the two-point fluxes; logs are precomputed so
// the pair loop stays free of transcendentals.
template <class S>
struct EcSide {
  S rho, v1, v2, v3, B1, B2, B3, psi, beta, ln_rho, ln_beta;
};

template <class S>
State9T<S> ec_flux_core(const EcSide<S>& a, const EcSide<S>& b, const GasParams& gas, double c_h) {
  const auto avg = [](const S& x, const S& y) { return S(0.5) * (x + y); };
  const double imu0 = 1.0 / gas.mu0;

  const S rho_ln = logmean_core(a.rho, b.rho, a.ln_rho, b.ln_rho);
  const S beta_ln = logmean_core(a.beta, b.beta, a.ln_beta, b.ln_beta);
  const S v1m = avg(a.v1, b.v1), v2m = avg(a.v2, b.v2), v3m = avg(a.v3, b.v3);
  const S B1m = avg(a.B1, b.B1), B2m = avg(a.B2, b.B2), B3m = avg(a.B3, b.B3);
  const S psim = avg(a.psi, b.psi);
  const S p_bar = avg(a.rho, b.rho) / avg(a.beta, b.beta);
  const S B1sqm = avg(a.B1 * a.B1, b.B1 * b.B1);
  const S B2sqm = avg(a.B2 * a.B2, b.B2 * b.B2);
  const S B3sqm = avg(a.B3 * a.B3, b.B3 * b.B3);
  const S v1sqm = avg(a.v1 * a.v1, b.v1 * b.v1);
  const S v2sqm = avg(a.v2 * a.v2, b.v2 * b.v2);
  const S v3sqm = avg(a.v3 * a.v3, b.v3 * b.v3);

  State9T<S> f;
  f[IRHO] = rho_ln * v1m;
  f[IMX] = rho_ln * v1m * v1m + p_bar + S(0.5 * imu0) * (B1sqm + B2sqm + B3sqm) - S(imu0) * B1m * B1m;
  f[IMY] = rho_ln * v1m * v2m - S(imu0) * B1m * B2m;
  f[IMZ] = rho_ln * v1m * v3m - S(imu0) * B1m * B3m;
  f[IBX] = S(c_h) * psim;
  f[IBY] = v1m * B2m - v2m * B1m;
  f[IBZ] = v1m * B3m - v3m * B1m;
  f[IPSI] = S(c_h) * B1m;
  f[IE] = f[IRHO] * (S(1.0 / (gas.gamma - 1.0)) / beta_ln - S(0.5) * (v1sqm + v2sqm + v3sqm)) +
          f[IMX] * v1m + f[IMY] * v2m + f[IMZ] * v3m +
          S(imu0) * (f[IBX] * B1m + f[IBY] * B2m + f[IBZ] * B3m -
                     S(0.5) * (avg(a.v1 * a.B1 * a.B1, b.v1 * b.B1 * b.B1) +
                               avg(a.v1 * a.B2 * a.B2, b.v1 * b.B2 * b.B2) +
                               avg(a.v1 * a.B3 * a.B3, b.v1 * b.B3 * b.B3)) +
                     avg(a.v1 * a.B1, b.v1 * b.B1) * B1m + avg(a.v2 * a.B2, b.v2 * b.B2) * B1m +
                     avg(a.v3 * a.B3, b.v3 * b.B3) * B1m + f[IPSI] * psim -
                     S(c_h) * avg(a.B1 * a.psi, b.B1 * b.psi));
  return f;
}

// Non-symmetric two-point flux f*(a,b) = f^EC(a,b) + (phi^MHD_a B1_b +
// phi^GLM_a psi_b)/2; the phi terms account for the non-conservative part.
template <class S>
State9T<S> nonsym_flux_core(const EcSide<S>& a, const EcSide<S>& b, const GasParams& gas,
                            double c_h) {
  State9T<S> f = ec_flux_core(a, b, gas, c_h);
  const double imu0 = 1.0 / gas.mu0;
  const S half_B1b = S(0.5) * b.B1;
  const S half_psib = S(0.5) * b.psi;
  f[IMX] = f[IMX] + S(imu0) * a.B1 * half_B1b;
  f[IMY] = f[IMY] + S(imu0) * a.B2 * half_B1b;
  f[IMZ] = f[IMZ] + S(imu0) * a.B3 * half_B1b;
  f[IE] = f[IE] + S(imu0) * (a.v1 * a.B1 + a.v2 * a.B2 + a.v3 * a.B3) * half_B1b +
          S(imu0) * a.v1 * a.psi * half_psib;
  f[IBX] = f[IBX] + a.v1 * half_B1b;
  f[IBY] = f[IBY] + a.v2 * half_B1b;
  f[IBZ] = f[IBZ] + a.v3 * half_B1b;
  f[IPSI] = f[IPSI] + a.v1 * half_psib;
  return f;
}

}  // namespace detail
}  // namespace esmhd
