#include "esmhd/audit.hpp"

#include <cmath>

namespace esmhd {

EntropyReport audit(const SemiDiscreteSystem& sys, const Field& u, const Field& dudt,
                    const RhsDiagnostics& diag, double t) {
  const int nn = sys.mesh.n_nodes();
  if (static_cast<int>(u.size()) != nn || static_cast<int>(dudt.size()) != nn ||
      static_cast<int>(diag.w.size()) != nn || static_cast<int>(diag.g.size()) != nn ||
      static_cast<int>(diag.fnu.size()) != nn)
    throw ShapeMismatch("audit");

  EntropyReport rep;
  rep.t = t;
  for (int i = 0; i < nn; ++i) {
    const double jw = sys.mesh.node_weight(i);
    rep.S_total += jw * entropy_function(ConsState::from_array(u[i]), sys.gas);
    rep.dSdt += jw * dot(diag.w[i], dudt[i]);
    rep.DT += jw * dot(diag.g[i], diag.fnu[i]);
  }
  rep.balance = rep.dSdt + rep.DT;
  rep.left = diag.left_face;
  rep.right = diag.right_face;
  rep.psi_damping = diag.wdotr;
  rep.forcing_entropy = diag.forcing_entropy;
  rep.lambda_left = diag.lambda_left;
  rep.lambda_right = diag.lambda_right;
  rep.identity_residual = rep.dSdt - (-rep.DT + rep.psi_damping + rep.forcing_entropy +
                                      rep.left.total() + rep.right.total());
  rep.scale = std::max({std::abs(rep.dSdt), std::abs(rep.DT), 1.0});
  return rep;
}

WallProduction wall_production_closed_form(const PrimState& interior, const WallSpec& wall,
                                           const DissParams& diss, double lambda_max,
                                           const GasParams& gas) {
  validate(interior);
  const PrimState& v = interior;
  WallProduction p;
  if (diss.llf_enabled) {
    const double dB1 = wall.external_field()[0] - v.B[0];
    p.llf_term = -lambda_max / v.T * (v.rho * v.v[0] * v.v[0] + dB1 * dB1 / gas.mu0);
  }
  if (diss.beta_visc > 0) {
    const double dv2 = wall.v_wall[1] - v.v[1];
    const double dv3 = wall.v_wall[2] - v.v[2];
    double q = gas.mu_ns * (4.0 / 3.0 * v.v[0] * v.v[0] + dv2 * dv2 + dv3 * dv3);
    if (wall.is_insulating()) {
      const Vec3 B0 = wall.external_field();
      const double db2 = B0[1] - v.B[1];
      const double db3 = B0[2] - v.B[2];
      q += gas.mu_r / (gas.mu0 * gas.mu0) * (db2 * db2 + db3 * db3);
    }
    p.viscous_term = -2.0 * diss.beta_visc / v.T * q;
  }
  return p;
}

}  // namespace esmhd
