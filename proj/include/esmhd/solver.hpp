#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "esmhd/fluxes.hpp"
#include "esmhd/kernels.hpp"
#include "esmhd/sbp.hpp"
#include "esmhd/wall_bc.hpp"

namespace esmhd {

// 1D mesh of contiguous non-overlapping intervals sharing one LGL operator.
struct Mesh1D {
  SbpOperator sbp;
  std::vector<double> bounds;  // element boundaries, size n_elem + 1

  static Mesh1D uniform(double x0, double x1, int n_elem, int p);
  static Mesh1D from_boundaries(std::vector<double> bounds, int p);

  int n_elem() const { return static_cast<int>(bounds.size()) - 1; }
  int nodes_per_elem() const { return sbp.n_nodes(); }
  int n_nodes() const { return n_elem() * nodes_per_elem(); }
  double jacobian(int e) const { return 0.5 * (bounds[e + 1] - bounds[e]); }
  double node_x(int e, int k) const { return bounds[e] + jacobian(e) * (sbp.nodes[k] + 1.0); }
  double measure() const { return bounds.back() - bounds.front(); }
  // J_k w_k for the global node index
  double node_weight(int node) const {
    return jacobian(node / nodes_per_elem()) * sbp.weights[node % nodes_per_elem()];
  }
};

using Field = std::vector<State9>;  // one conservative state per node

// ||Omega||^-1 [sum_k J_k w_k e_k^2]^(1/2)
double discrete_l2_error(const Mesh1D& mesh, const std::vector<double>& numeric,
                         const std::vector<double>& reference);
// Same norm over all nine components jointly.
double discrete_l2_error(const Mesh1D& mesh, const Field& numeric, const Field& reference);

// Boundary descriptors.
struct WallBc {
  WallSpec wall;
};
struct InletBc {
  InletSpec inlet;
};
struct OutletBc {
  double p_out = 1.0;
};
struct PeriodicBc {};
using BcSpec = std::variant<WallBc, InletBc, OutletBc, PeriodicBc>;

// Entropy production bookkeeping for one domain boundary face, following the
// element-balance split into advective/viscous conservative/dissipative SAT
// contributions.
struct FaceBreakdown {
  double advective_cons = 0;
  double advective_diss = 0;
  double viscous_cons = 0;
  double viscous_diss = 0;
  double total() const { return advective_cons + advective_diss + viscous_cons + viscous_diss; }
};

// Everything the entropy audit needs from one rhs evaluation.
struct RhsDiagnostics {
  std::vector<State9> w;    // entropy variables per node
  std::vector<State9> g;    // entropy-variable gradients per node
  std::vector<State9> fnu;  // viscous flux C^nu g per node
  FaceBreakdown left_face, right_face;
  double lambda_left = 0, lambda_right = 0;  // wall |lambda|max (LLF on)
  double wdotr = 0;                          // sum Jw w^T r (psi damping, pipe mode)
  double forcing_entropy = 0;                // sum Jw w^T forcing
};

// Per-node forcing added to du/dt (manufactured solutions).
using Forcing = std::function<State9(double x, double t)>;

// Observer invoked at every rhs evaluation (entropy audits).
struct EntropyReport;
using RhsObserver = std::function<void(const EntropyReport&)>;

class SemiDiscreteSystem {
 public:
  Mesh1D mesh;
  GasParams gas;
  GlmParams glm;
  DissParams diss;
  BcSpec left_bc = PeriodicBc{};
  BcSpec right_bc = PeriodicBc{};
  Forcing forcing;              // optional
  RhsObserver rhs_observer;     // optional
  mutable long rhs_evaluations = 0;

  void validate() const;

  // J_j w_j du_j/dt = -F^a_j + F^nu_j + J_j w_j r_j (+ forcing); throws
  // positivity errors with the node location attached.
  void rhs(const Field& u, double t, Field& dudt, RhsDiagnostics* diag = nullptr) const;

  // BR1 gradients of the entropy variables (exposed for tests).
  void compute_gradients(const Field& u, double t, std::vector<State9>& g) const;

  Field constant_field(const ConsState& u) const;
  Field from_primitive(const std::function<PrimState(double)>& f) const;

 private:
  struct BoundaryData;
  void assemble(const Field& u, double t, Field& dudt, RhsDiagnostics* diag) const;
};

}  // namespace esmhd
