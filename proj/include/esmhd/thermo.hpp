#pragma once

#include "esmhd/types.hpp"

namespace esmhd {

// Perfect-gas model with constant transport coefficients.  T_ref/rho_ref are
// the reference values entering the specific entropy; they default to 1 for
// non-dimensional runs.
struct GasParams {
  double gamma = 1.4;   // heat capacity ratio
  double R = 1.0;       // specific gas constant
  double mu0 = 1.0;     // permeability
  double mu_ns = 0.0;   // dynamic viscosity
  double mu_r = 0.0;    // resistivity
  double kappa = 0.0;   // thermal conductivity
  double T_ref = 1.0;
  double rho_ref = 1.0;

  void validate() const;
  double cp() const { return gamma * R / (gamma - 1.0); }
  double cv() const { return R / (gamma - 1.0); }
};

// Conservative state u = (rho, rho*v, E, B, psi).
struct ConsState {
  double rho = 1.0;
  Vec3 mom{0, 0, 0};
  double E = 1.0;
  Vec3 B{0, 0, 0};
  double psi = 0.0;

  State9 as_array() const { return {rho, mom[0], mom[1], mom[2], E, B[0], B[1], B[2], psi}; }
  static ConsState from_array(const State9& a) {
    return {a[0], {a[1], a[2], a[3]}, a[4], {a[5], a[6], a[7]}, a[8]};
  }
};

// Primitive state v = (rho, v, T, B, psi).
struct PrimState {
  double rho = 1.0;
  Vec3 v{0, 0, 0};
  double T = 1.0;
  Vec3 B{0, 0, 0};
  double psi = 0.0;

  State9 as_array() const { return {rho, v[0], v[1], v[2], T, B[0], B[1], B[2], psi}; }
  static PrimState from_array(const State9& a) {
    return {a[0], {a[1], a[2], a[3]}, a[4], {a[5], a[6], a[7]}, a[8]};
  }
};

// Entropy variables w = dS/du, S = -rho*s.
struct EntropyVars {
  State9 w{};
};

// p = (gamma-1) (E - |m|^2/2rho - |B|^2/2mu0 - psi^2/2mu0).  Throws
// NonPositiveDensity / NonPositivePressure.
double pressure(const ConsState& u, const GasParams& gas);
double pressure(const PrimState& v, const GasParams& gas);

PrimState cons_to_prim(const ConsState& u, const GasParams& gas);
ConsState prim_to_cons(const PrimState& v, const GasParams& gas);

// s = R/(gamma-1) ln(T/T_ref) - R ln(rho/rho_ref)
double specific_entropy(const PrimState& v, const GasParams& gas);
// S = -rho s
double entropy_function(const ConsState& u, const GasParams& gas);
double entropy_function(const PrimState& v, const GasParams& gas);
// f^S = S v1
double entropy_flux(const ConsState& u, const GasParams& gas);
double entropy_flux(const PrimState& v, const GasParams& gas);

EntropyVars entropy_vars(const ConsState& u, const GasParams& gas);
EntropyVars entropy_vars(const PrimState& v, const GasParams& gas);

// dv/dw and dw/dv evaluated at a state; exact mutual inverses.
Mat9 dvdw_jacobian(const PrimState& v, const GasParams& gas);
Mat9 dwdv_jacobian(const PrimState& v, const GasParams& gas);

void validate(const PrimState& v);
void validate(const ConsState& u, const GasParams& gas);

}  // namespace esmhd
