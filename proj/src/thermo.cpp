#include "esmhd/thermo.hpp"

#include <cmath>

namespace esmhd {

void GasParams::validate() const {
  if (!(gamma > 1.0)) throw ConfigError("gamma must be > 1");
  if (!(R > 0.0)) throw ConfigError("R must be > 0");
  if (!(mu0 > 0.0)) throw ConfigError("mu0 must be > 0");
  if (mu_ns < 0.0 || mu_r < 0.0 || kappa < 0.0)
    throw ConfigError("transport coefficients must be >= 0");
  if (!(T_ref > 0.0) || !(rho_ref > 0.0)) throw ConfigError("reference state must be positive");
}

void validate(const PrimState& v) {
  if (!(v.rho > 0.0)) throw NonPositiveDensity(v.rho);
  if (!(v.T > 0.0)) throw NonPositiveTemperature(v.T);
}

void validate(const ConsState& u, const GasParams& gas) {
  if (!(u.rho > 0.0)) throw NonPositiveDensity(u.rho);
  (void)pressure(u, gas);
}

double pressure(const ConsState& u, const GasParams& gas) {
  if (!(u.rho > 0.0)) throw NonPositiveDensity(u.rho);
  const double kinetic = 0.5 * norm2(u.mom) / u.rho;
  const double magnetic = 0.5 * (norm2(u.B) + u.psi * u.psi) / gas.mu0;
  const double p = (gas.gamma - 1.0) * (u.E - kinetic - magnetic);
  if (!(p > 0.0)) throw NonPositivePressure(p);
  return p;
}

double pressure(const PrimState& v, const GasParams& gas) {
  validate(v);
  return v.rho * gas.R * v.T;
}

PrimState cons_to_prim(const ConsState& u, const GasParams& gas) {
  const double p = pressure(u, gas);
  PrimState v;
  v.rho = u.rho;
  v.v = (1.0 / u.rho) * u.mom;
  v.T = p / (u.rho * gas.R);
  v.B = u.B;
  v.psi = u.psi;
  return v;
}

ConsState prim_to_cons(const PrimState& v, const GasParams& gas) {
  validate(v);
  const double p = v.rho * gas.R * v.T;
  ConsState u;
  u.rho = v.rho;
  u.mom = v.rho * v.v;
  u.E = p / (gas.gamma - 1.0) + 0.5 * v.rho * norm2(v.v) +
        0.5 * (norm2(v.B) + v.psi * v.psi) / gas.mu0;
  u.B = v.B;
  u.psi = v.psi;
  return u;
}

double specific_entropy(const PrimState& v, const GasParams& gas) {
  validate(v);
  return gas.R / (gas.gamma - 1.0) * std::log(v.T / gas.T_ref) -
         gas.R * std::log(v.rho / gas.rho_ref);
}

double entropy_function(const PrimState& v, const GasParams& gas) {
  return -v.rho * specific_entropy(v, gas);
}

double entropy_function(const ConsState& u, const GasParams& gas) {
  return entropy_function(cons_to_prim(u, gas), gas);
}

double entropy_flux(const PrimState& v, const GasParams& gas) {
  return entropy_function(v, gas) * v.v[0];
}

double entropy_flux(const ConsState& u, const GasParams& gas) {
  return entropy_flux(cons_to_prim(u, gas), gas);
}

EntropyVars entropy_vars(const PrimState& v, const GasParams& gas) {
  const double s = specific_entropy(v, gas);
  const double invT = 1.0 / v.T;
  EntropyVars e;
  e.w[IRHO] = gas.gamma * gas.R / (gas.gamma - 1.0) - s - 0.5 * norm2(v.v) * invT;
  for (int d = 0; d < 3; ++d) e.w[IMX + d] = v.v[d] * invT;
  e.w[IE] = -invT;
  for (int d = 0; d < 3; ++d) e.w[IBX + d] = v.B[d] / gas.mu0 * invT;
  e.w[IPSI] = v.psi / gas.mu0 * invT;
  return e;
}

EntropyVars entropy_vars(const ConsState& u, const GasParams& gas) {
  return entropy_vars(cons_to_prim(u, gas), gas);
}

// theta = [dv/dw] g.  Rows follow from inverting dw/dv (see dwdv_jacobian)
// and are unit-tested against finite differences of the variable maps.
Mat9 dvdw_jacobian(const PrimState& v, const GasParams& gas) {
  validate(v);
  const double T = v.T;
  Mat9 m;
  m(IRHO, IRHO) = v.rho / gas.R;
  for (int d = 0; d < 3; ++d) m(IRHO, IMX + d) = v.rho * v.v[d] / gas.R;
  m(IRHO, IE) = (v.rho / gas.R) * (0.5 * norm2(v.v) + gas.R * T / (gas.gamma - 1.0));
  for (int d = 0; d < 3; ++d) {
    m(IMX + d, IMX + d) = T;
    m(IMX + d, IE) = v.v[d] * T;
  }
  m(IE, IE) = T * T;
  for (int d = 0; d < 3; ++d) {
    m(IBX + d, IBX + d) = gas.mu0 * T;
    m(IBX + d, IE) = v.B[d] * T;
  }
  m(IPSI, IPSI) = gas.mu0 * T;
  m(IPSI, IE) = v.psi * T;
  return m;
}

Mat9 dwdv_jacobian(const PrimState& v, const GasParams& gas) {
  validate(v);
  const double T = v.T;
  const double invT = 1.0 / T;
  const double invT2 = invT * invT;
  Mat9 m;
  m(IRHO, IRHO) = gas.R / v.rho;
  for (int d = 0; d < 3; ++d) m(IRHO, IMX + d) = -v.v[d] * invT;
  m(IRHO, IE) = -gas.R / ((gas.gamma - 1.0) * T) + 0.5 * norm2(v.v) * invT2;
  for (int d = 0; d < 3; ++d) {
    m(IMX + d, IMX + d) = invT;
    m(IMX + d, IE) = -v.v[d] * invT2;
  }
  m(IE, IE) = invT2;
  for (int d = 0; d < 3; ++d) {
    m(IBX + d, IBX + d) = invT / gas.mu0;
    m(IBX + d, IE) = -v.B[d] * invT2 / gas.mu0;
  }
  m(IPSI, IPSI) = invT / gas.mu0;
  m(IPSI, IE) = -v.psi * invT2 / gas.mu0;
  return m;
}

}  // namespace esmhd
