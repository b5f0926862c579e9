#pragma once

#include <string>
#include <vector>

#include "esmhd/fluxes.hpp"
#include "esmhd/wall_bc.hpp"

namespace esmhd {

// Smooth manufactured solutions with analytic space/time derivatives and the
// per-node forcing that makes them exact solutions of the forced system.
// Each primitive component is  q(x,t) = q0 + A phi(k x) g(om t)  with phi a
// trigonometric shape whose first two derivatives are known in closed form.
class ManufacturedSolution {
 public:
  enum class Shape { one, linear, sin, cos, cos_minus_one };
  enum class TimeShape { one, cos, sin };

  struct Component {
    double base = 0;
    double amp = 0;
    Shape shape = Shape::one;
    double k = 0;
    TimeShape tshape = TimeShape::one;
    double omega = 0;
  };

  std::string name;
  std::array<Component, 9> fields;  // primitive layout (rho, v, T, B, psi)

  PrimState prim(double x, double t) const;
  State9 prim_x(double x, double t) const;   // d(prim)/dx
  State9 prim_xx(double x, double t) const;  // d2(prim)/dx2
  State9 prim_t(double x, double t) const;   // d(prim)/dt
  ConsState cons(double x, double t, const GasParams& gas) const;

  // F = du/dt + df^a/dx + Upsilon - df^nu/dx - r, evaluated exactly via dual
  // numbers through the shared flux kernels.
  State9 forcing(double x, double t, const GasParams& gas, const GlmParams& glm) const;

  // Wall data the solution satisfies at a domain end (v = 0, dT/dn = 0,
  // B = B0 there by construction of the registered cases).
  Vec3 boundary_field(double x_wall, double t) const;
};

// Registered cases for the convergence harness.
ManufacturedSolution mms_walls();     // insulating-left / conducting-right compatible
ManufacturedSolution mms_periodic();  // periodic domain [0, 1]
ManufacturedSolution mms_uniform();   // constant state, representable at any degree
const ManufacturedSolution& find_manufactured(const std::string& name);
std::vector<std::string> manufactured_names();

}  // namespace esmhd
