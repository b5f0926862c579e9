#pragma once

#include <functional>
#include <variant>

#include "esmhd/thermo.hpp"

namespace esmhd {

// Magnetic wall kinds.  A perfectly conducting wall is handled as the
// c_d^-1 = 0 limit of the conducting case.
struct Insulating {
  Vec3 B0{0, 0, 0};
};
struct Conducting {
  double c_d = 1.0;
  Vec3 B0{0, 0, 0};
};
struct PerfectConducting {
  Vec3 B0{0, 0, 0};
};

using MagneticWall = std::variant<Insulating, Conducting, PerfectConducting>;

using HeatEntropyFlux = std::function<double(double)>;  // g(t)

struct WallSpec {
  Vec3 v_wall{0, 0, 0};        // tangential wall velocity (v_wall . n = 0)
  HeatEntropyFlux g_heat;      // null means adiabatic, g(t) = 0
  MagneticWall magnetic = Insulating{};

  double g(double t) const { return g_heat ? g_heat(t) : 0.0; }
  Vec3 external_field() const;
  bool is_insulating() const { return std::holds_alternative<Insulating>(magnetic); }
  // c_d^-1; 0 for a perfect conductor, throws WrongWallKind for insulating.
  double inv_conductance() const;
};

// One boundary node: outward unit normal, interior primitive state, interior
// primitive-variable gradient (theta[d][q] = d(prim_q)/dx_d).
struct BoundaryFace {
  Vec3 normal{1, 0, 0};
  PrimState interior;
  Grad39 theta{};
};

struct ViscousGhost {
  PrimState state;
  Grad39 theta;
};

// Mirror state for the advective flux penalty: reflects the normal velocity
// and the normal magnetic-field deviation from the external field.
PrimState advective_ghost(const BoundaryFace& face, const WallSpec& wall);

ViscousGhost insulating_viscous_ghost(const BoundaryFace& face, const WallSpec& wall, double t,
                                      const GasParams& gas);
ViscousGhost conducting_viscous_ghost(const BoundaryFace& face, const WallSpec& wall, double t,
                                      const GasParams& gas);
// Dispatches on the magnetic wall kind.
ViscousGhost wall_viscous_ghost(const BoundaryFace& face, const WallSpec& wall, double t,
                                const GasParams& gas);

// v^w = v_s - (v_s . n) n
Vec3 project_wall_velocity(const Vec3& v_surface, const Vec3& n);

// Isentropic-reference inflow driven by a target mass flow rate.
struct InletSpec {
  double rho_ref = 1.0;
  double T_ref = 1.0;
  Vec3 B0{0, 0, 0};
  double mdot = 0.0;
  double area = 1.0;
};

ViscousGhost inlet_ghost(const BoundaryFace& face, const InletSpec& inlet, const GasParams& gas);

// Prescribed-pressure outflow with a backflow limiter.
ViscousGhost outlet_ghost(const BoundaryFace& face, double p_out, const GasParams& gas);

// Three-step transformation of an entropy-variable gradient through a ghost
// rule stated on primitive gradients:
//   theta_- = [dv/dw]_- g_-,  theta_+ = transform(theta_-),  g_+ = [dw/dv]_+ theta_+.
State9 gradient_roundtrip(const State9& g_minus, const PrimState& state_minus,
                          const PrimState& state_plus,
                          const std::function<State9(const State9&)>& transform,
                          const GasParams& gas);

}  // namespace esmhd
