#pragma once

#include "esmhd/solver.hpp"

namespace esmhd {

// Global discrete entropy balance for one rhs evaluation.  With all
// dissipation off, alpha = 0, and adiabatic walls, dS/dt + DT vanishes to
// roundoff; with dissipation on it is non-positive.
struct EntropyReport {
  double t = 0;
  double S_total = 0;
  double dSdt = 0;     // sum_k J_k w_k  w_k^T du_k/dt
  double DT = 0;       // sum_k J_k w_k  g_k^T C^nu_k g_k
  double balance = 0;  // dSdt + DT
  FaceBreakdown left, right;
  double psi_damping = 0;      // sum J w  w^T r
  double forcing_entropy = 0;  // sum J w  w^T forcing
  double lambda_left = 0, lambda_right = 0;
  // dSdt - (-DT + psi_damping + forcing + face productions); roundoff-sized
  // whenever the semi-discrete balance identity applies.
  double identity_residual = 0;
  double scale = 1;  // max(|dSdt|, |DT|, 1)

  double scaled_balance() const { return balance / scale; }
};

EntropyReport audit(const SemiDiscreteSystem& sys, const Field& u, const Field& dudt,
                    const RhsDiagnostics& diag, double t);

struct WallProduction {
  double llf_term = 0;
  double viscous_term = 0;
};

// Analytic wall entropy production of the two dissipation operators in the
// solver frame (n = +-e_x), for cross-checking audit breakdowns.
WallProduction wall_production_closed_form(const PrimState& interior, const WallSpec& wall,
                                           const DissParams& diss, double lambda_max,
                                           const GasParams& gas);

}  // namespace esmhd
