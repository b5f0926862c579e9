#include "esmhd/wall_bc.hpp"

#include <cmath>

namespace esmhd {

namespace {

void check_normal(const Vec3& n) {
  if (std::abs(norm(n) - 1.0) > 1e-14) throw DomainError("normal must be a unit vector");
}

// theta[d][q] with the normal component removed for every variable q.
Grad39 strip_normal_gradient(const Grad39& theta, const Vec3& n) {
  Grad39 out = theta;
  for (int q = 0; q < 9; ++q) {
    const double tn = theta[0][q] * n[0] + theta[1][q] * n[1] + theta[2][q] * n[2];
    for (int d = 0; d < 3; ++d) out[d][q] = theta[d][q] - tn * n[d];
  }
  return out;
}

}  // namespace

Vec3 WallSpec::external_field() const {
  return std::visit([](const auto& m) { return m.B0; }, magnetic);
}

double WallSpec::inv_conductance() const {
  if (std::holds_alternative<Conducting>(magnetic)) {
    const double c_d = std::get<Conducting>(magnetic).c_d;
    if (!(c_d > 0.0)) throw ConfigError("conducting wall requires c_d > 0");
    return 1.0 / c_d;
  }
  if (std::holds_alternative<PerfectConducting>(magnetic)) return 0.0;
  throw WrongWallKind("insulating wall has no conductance");
}

Vec3 project_wall_velocity(const Vec3& v_surface, const Vec3& n) {
  check_normal(n);
  return v_surface - dot(v_surface, n) * n;
}

PrimState advective_ghost(const BoundaryFace& face, const WallSpec& wall) {
  check_normal(face.normal);
  validate(face.interior);
  const PrimState& v = face.interior;
  const Vec3 B0 = wall.external_field();
  PrimState g = v;
  g.v = v.v - 2.0 * dot(v.v, face.normal) * face.normal;
  g.B = v.B - 2.0 * (dot(v.B, face.normal) - dot(B0, face.normal)) * face.normal;
  return g;
}

// Common hydrodynamic/thermal part of the viscous ghost: reflected velocity
// about the wall velocity, flipped rho/T/psi gradients, and the heat entropy
// flux term in the temperature gradient.  The sign of the g(t) term is chosen
// so the boundary production (w_+^T f^nu_- + w_-^T f^nu_+)/2 equals +g(t)
// with the outward normal.
static ViscousGhost viscous_ghost_common(const BoundaryFace& face, const WallSpec& wall, double t,
                                         const GasParams& gas) {
  check_normal(face.normal);
  validate(face.interior);
  const PrimState& v = face.interior;
  ViscousGhost g;
  g.state = v;
  g.state.v = -1.0 * v.v + 2.0 * wall.v_wall;
  g.theta = face.theta;
  const double gt = wall.g(t);
  double heat = 0.0;
  if (gt != 0.0) {
    if (!(gas.kappa > 0.0)) throw ConfigError("heat entropy flux requires kappa > 0");
    heat = 2.0 * v.T * gt / gas.kappa;
  }
  for (int d = 0; d < 3; ++d) {
    g.theta[d][IRHO] = -face.theta[d][IRHO];
    g.theta[d][IE] = -face.theta[d][IE] - heat * face.normal[d];
    g.theta[d][IPSI] = -face.theta[d][IPSI];
  }
  return g;
}

ViscousGhost insulating_viscous_ghost(const BoundaryFace& face, const WallSpec& wall, double t,
                                      const GasParams& gas) {
  if (!wall.is_insulating()) throw WrongWallKind("insulating_viscous_ghost");
  ViscousGhost g = viscous_ghost_common(face, wall, t, gas);
  const Vec3 B0 = wall.external_field();
  g.state.B = -1.0 * face.interior.B + 2.0 * B0;
  // Magnetic gradient block is kept as-is.
  return g;
}

ViscousGhost conducting_viscous_ghost(const BoundaryFace& face, const WallSpec& wall, double t,
                                      const GasParams& gas) {
  const double inv_cd = wall.inv_conductance();  // throws for insulating
  ViscousGhost g = viscous_ghost_common(face, wall, t, gas);
  // State keeps the interior magnetic field; the gradient block is
  // transposed and shifted by the wall-conductance source term,
  //   theta_B+ = theta_B^T + 2 c_d^-1 (B0 - B) (x) n.
  const Vec3 dB = wall.external_field() - face.interior.B;
  for (int i = 0; i < 3; ++i)
    for (int d = 0; d < 3; ++d)
      g.theta[d][IBX + i] = face.theta[i][IBX + d] + 2.0 * inv_cd * dB[i] * face.normal[d];
  return g;
}

ViscousGhost wall_viscous_ghost(const BoundaryFace& face, const WallSpec& wall, double t,
                                const GasParams& gas) {
  if (wall.is_insulating()) return insulating_viscous_ghost(face, wall, t, gas);
  return conducting_viscous_ghost(face, wall, t, gas);
}

ViscousGhost inlet_ghost(const BoundaryFace& face, const InletSpec& inlet, const GasParams& gas) {
  check_normal(face.normal);
  validate(face.interior);
  const double p_minus = pressure(face.interior, gas);
  const double p_ref = inlet.rho_ref * gas.R * inlet.T_ref;
  const double pr = p_minus / p_ref;
  ViscousGhost g;
  g.state.rho = inlet.rho_ref * std::pow(pr, 1.0 / gas.gamma);
  g.state.T = inlet.T_ref * std::pow(pr, (gas.gamma - 1.0) / gas.gamma);
  const double V = inlet.mdot / (g.state.rho * inlet.area);
  g.state.v = -V * face.normal;
  g.state.B = inlet.B0;
  g.state.psi = 0.0;
  g.theta = strip_normal_gradient(face.theta, face.normal);
  return g;
}

ViscousGhost outlet_ghost(const BoundaryFace& face, double p_out, const GasParams& gas) {
  check_normal(face.normal);
  validate(face.interior);
  if (!(p_out > 0.0)) throw NonPositivePressure(p_out);
  const double p_minus = pressure(face.interior, gas);
  ViscousGhost g;
  g.state.rho = face.interior.rho;
  g.state.T = face.interior.T * (p_out / p_minus);
  const double vn = dot(face.interior.v, face.normal);
  g.state.v = face.interior.v - 2.0 * std::min(vn, 0.0) * face.normal;
  g.state.B = {0, 0, 0};
  g.state.psi = 0.0;
  g.theta = strip_normal_gradient(face.theta, face.normal);
  return g;
}

State9 gradient_roundtrip(const State9& g_minus, const PrimState& state_minus,
                          const PrimState& state_plus,
                          const std::function<State9(const State9&)>& transform,
                          const GasParams& gas) {
  const State9 theta_minus = dvdw_jacobian(state_minus, gas) * g_minus;
  const State9 theta_plus = transform(theta_minus);
  return dwdv_jacobian(state_plus, gas) * theta_plus;
}

}  // namespace esmhd
