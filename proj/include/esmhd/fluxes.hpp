#pragma once

#include "esmhd/thermo.hpp"

namespace esmhd {

// GLM divergence-cleaning parameters.  alpha_T > 0 switches the source term
// to pipe mode, which additionally damps temperature toward T0.
struct GlmParams {
  double c_h = 0.0;     // hyperbolic cleaning speed
  double alpha = 0.0;   // psi damping rate
  double alpha_T = 0.0; // temperature damping rate (pipe mode)
  double T0 = 1.0;
  double rho0 = 1.0;

  void validate() const {
    if (c_h < 0 || alpha < 0 || alpha_T < 0) throw ConfigError("glm rates must be >= 0");
  }
};

// Interface dissipation controls.
struct DissParams {
  double beta_visc = 0.0;
  bool llf_enabled = false;

  void validate() const {
    if (beta_visc < 0) throw ConfigError("beta_visc must be >= 0");
  }
};

State9 advective_flux_x(const ConsState& u, const GasParams& gas, const GlmParams& glm);
State9 advective_flux_x(const PrimState& v, const GasParams& gas, const GlmParams& glm);

// Non-conservative term direction vectors (Powell and GLM parts).
State9 powell_phi(const PrimState& v, const GasParams& gas);
State9 glm_phi(const PrimState& v, const GasParams& gas);

// Visco-resistive flux in x; theta_x is the x-gradient of the primitive
// variables (rho, v, T, B, psi).
State9 viscous_flux_x(const PrimState& v, const State9& theta_x, const GasParams& gas);

// C^nu such that viscous_flux_x(v, theta) = C^nu g with g = [dw/dv] theta;
// symmetric positive semi-definite.
Mat9 cnu_matrix(const PrimState& v, const GasParams& gas);

// (b - a)/(ln b - ln a) with a series branch near coincident arguments.
double logarithmic_mean(double a, double b);

// Entropy conservative two-point flux (symmetric, consistent).
State9 ec_two_point_flux(const PrimState& vi, const PrimState& vj, const GasParams& gas,
                         const GlmParams& glm);
State9 ec_two_point_flux(const ConsState& ui, const ConsState& uj, const GasParams& gas,
                         const GlmParams& glm);

// f*(i,j) = f^EC(i,j) + (phi^MHD_i B1_j + phi^GLM_i psi_j)/2.
State9 nonsym_flux(const PrimState& vi, const PrimState& vj, const GasParams& gas,
                   const GlmParams& glm);
State9 nonsym_flux(const ConsState& ui, const ConsState& uj, const GasParams& gas,
                   const GlmParams& glm);

// Psi* = w^T f*(u,u) - f^S, the potential entering the generalized Tadmor
// condition w_k^T f*(k,j) - w_j^T f*(j,k) = Psi*_k - Psi*_j.
double entropy_potential(const PrimState& v, const GasParams& gas, const GlmParams& glm);
double entropy_potential(const ConsState& u, const GasParams& gas, const GlmParams& glm);

// Entropy Jacobian H for the LLF operator; symmetric PSD with
// H [[w]] = [[u]] exactly in all components except the energy one.
Mat9 h_matrix(const PrimState& vi, const PrimState& vj, const GasParams& gas);

// max(|v1| + c_f, c_h) over both states, c_f the fast magnetosonic speed.
double max_wave_speed(const PrimState& vi, const PrimState& vj, const GasParams& gas,
                      const GlmParams& glm);

// DISS^a_(i,j) = |lambda|_max H [[w]]_(i,j) / 2 with [[w]] = w_j - w_i.
State9 llf_dissipation(const PrimState& vi, const PrimState& vj, const GasParams& gas,
                       const GlmParams& glm);
State9 llf_dissipation(const ConsState& ui, const ConsState& uj, const GasParams& gas,
                       const GlmParams& glm);

// DISS^nu_(i,j) = beta (C^nu_i + C^nu_j)/2 [[w]]_(i,j).
State9 viscous_interface_dissipation(const PrimState& vi, const PrimState& vj,
                                     const State9& w_jump, const GasParams& gas,
                                     const DissParams& diss);

State9 source_term(const PrimState& v, const GasParams& gas, const GlmParams& glm);

}  // namespace esmhd
