#include "esmhd/manufactured.hpp"

#include <cmath>

#include "esmhd/detail/typed_ops.hpp"

namespace esmhd {

namespace {

// First-order dual number: value and one directional derivative.  The flux
// kernels are polynomial/rational in their inputs, so these four operators
// are all that forcing evaluation needs.
struct Dual {
  double v = 0;
  double d = 0;

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit by design
  Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(const Dual& a, const Dual& b) {
  const double q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

struct ShapeEval {
  double f, fx, fxx;
};

ShapeEval eval_shape(ManufacturedSolution::Shape s, double k, double x) {
  switch (s) {
    case ManufacturedSolution::Shape::one:
      return {1.0, 0.0, 0.0};
    case ManufacturedSolution::Shape::linear:
      return {k * x, k, 0.0};
    case ManufacturedSolution::Shape::sin:
      return {std::sin(k * x), k * std::cos(k * x), -k * k * std::sin(k * x)};
    case ManufacturedSolution::Shape::cos:
      return {std::cos(k * x), -k * std::sin(k * x), -k * k * std::cos(k * x)};
    case ManufacturedSolution::Shape::cos_minus_one:
      return {std::cos(k * x) - 1.0, -k * std::sin(k * x), -k * k * std::cos(k * x)};
  }
  return {0, 0, 0};
}

struct TimeEval {
  double g, gt;
};

TimeEval eval_time(ManufacturedSolution::TimeShape s, double om, double t) {
  switch (s) {
    case ManufacturedSolution::TimeShape::one:
      return {1.0, 0.0};
    case ManufacturedSolution::TimeShape::cos:
      return {std::cos(om * t), -om * std::sin(om * t)};
    case ManufacturedSolution::TimeShape::sin:
      return {std::sin(om * t), om * std::cos(om * t)};
  }
  return {1.0, 0.0};
}

struct FieldEval {
  double q, qx, qxx, qt;
};

FieldEval eval_component(const ManufacturedSolution::Component& c, double x, double t) {
  const ShapeEval s = eval_shape(c.shape, c.k, x);
  const TimeEval g = eval_time(c.tshape, c.omega, t);
  return {c.base + c.amp * s.f * g.g, c.amp * s.fx * g.g, c.amp * s.fxx * g.g,
          c.amp * s.f * g.gt};
}

template <class S>
detail::PrimT<S> make_prim(const std::array<S, 9>& q) {
  return {q[IRHO], q[IMX], q[IMY], q[IMZ], q[IE], q[IBX], q[IBY], q[IBZ], q[IPSI]};
}

}  // namespace

PrimState ManufacturedSolution::prim(double x, double t) const {
  State9 q;
  for (int i = 0; i < 9; ++i) q[i] = eval_component(fields[i], x, t).q;
  return PrimState::from_array(q);
}

State9 ManufacturedSolution::prim_x(double x, double t) const {
  State9 q;
  for (int i = 0; i < 9; ++i) q[i] = eval_component(fields[i], x, t).qx;
  return q;
}

State9 ManufacturedSolution::prim_xx(double x, double t) const {
  State9 q;
  for (int i = 0; i < 9; ++i) q[i] = eval_component(fields[i], x, t).qxx;
  return q;
}

State9 ManufacturedSolution::prim_t(double x, double t) const {
  State9 q;
  for (int i = 0; i < 9; ++i) q[i] = eval_component(fields[i], x, t).qt;
  return q;
}

ConsState ManufacturedSolution::cons(double x, double t, const GasParams& gas) const {
  return prim_to_cons(prim(x, t), gas);
}

State9 ManufacturedSolution::forcing(double x, double t, const GasParams& gas,
                                     const GlmParams& glm) const {
  std::array<FieldEval, 9> fe;
  for (int i = 0; i < 9; ++i) fe[i] = eval_component(fields[i], x, t);

  // du/dt through duals seeded with time derivatives
  std::array<Dual, 9> prim_t_dual;
  for (int i = 0; i < 9; ++i) prim_t_dual[i] = Dual(fe[i].q, fe[i].qt);
  const auto u_t = detail::cons_from_prim(make_prim(prim_t_dual), gas);

  // df^a/dx through duals seeded with space derivatives
  std::array<Dual, 9> prim_x_dual;
  for (int i = 0; i < 9; ++i) prim_x_dual[i] = Dual(fe[i].q, fe[i].qx);
  const auto fa_x = detail::advective_flux_x_core(make_prim(prim_x_dual), gas, glm.c_h);

  // non-conservative terms at the point values
  std::array<double, 9> prim_val;
  for (int i = 0; i < 9; ++i) prim_val[i] = fe[i].q;
  const auto phi_m = detail::powell_phi_core(make_prim(prim_val), gas);
  const auto phi_g = detail::glm_phi_core(make_prim(prim_val), gas);

  // df^nu/dx: state and gradient both carried as duals in x
  std::array<Dual, 9> theta_dual;
  for (int i = 0; i < 9; ++i) theta_dual[i] = Dual(fe[i].qx, fe[i].qxx);
  const auto fnu_x = detail::viscous_flux_x_core(make_prim(prim_x_dual), theta_dual, gas);

  const auto r =
      detail::source_core(make_prim(prim_val), gas, glm.alpha, glm.alpha_T, glm.T0, glm.rho0);

  State9 F;
  for (int i = 0; i < 9; ++i)
    F[i] = u_t[i].d + fa_x[i].d + fe[IBX].qx * phi_m[i] + fe[IPSI].qx * phi_g[i] - fnu_x[i].d -
           r[i];
  return F;
}

Vec3 ManufacturedSolution::boundary_field(double x_wall, double t) const {
  const PrimState v = prim(x_wall, t);
  return v.B;
}

ManufacturedSolution mms_walls() {
  using S = ManufacturedSolution::Shape;
  using T = ManufacturedSolution::TimeShape;
  const double k = 2.0 * M_PI;
  ManufacturedSolution m;
  m.name = "mms_walls";
  // Transversal configuration mirroring the pipe-flow structure: no
  // through-flow, tangential velocity and magnetic field driven across the
  // domain.  Wall values are time-independent (v = (0, 0.2, -0.1),
  // B = (0.5, 0.3, -0.2), dT/dn = 0 at x = 0 and 1), so insulating and
  // conducting walls are both satisfied exactly by the continuous solution.
  m.fields[IRHO] = {1.0, 0.10, S::cos, k, T::cos, 0.9};
  m.fields[IMX] = {0.0, 0.0, S::one, 0, T::one, 0};
  m.fields[IMY] = {0.2, 0.15, S::sin, k, T::cos, 0.8};
  m.fields[IMZ] = {-0.1, 0.12, S::sin, k, T::sin, 1.1};
  m.fields[IE] = {1.0, 0.08, S::cos, k, T::cos, 1.2};
  m.fields[IBX] = {0.5, 0, S::one, 0, T::one, 0};
  m.fields[IBY] = {0.3, 0.15, S::cos_minus_one, k, T::sin, 1.0};
  m.fields[IBZ] = {-0.2, 0.10, S::cos_minus_one, k, T::cos, 1.3};
  m.fields[IPSI] = {0.0, 0.12, S::sin, k, T::sin, 1.2};
  return m;
}

ManufacturedSolution mms_periodic() {
  using S = ManufacturedSolution::Shape;
  using T = ManufacturedSolution::TimeShape;
  const double k = 2.0 * M_PI;
  ManufacturedSolution m;
  m.name = "mms_periodic";
  m.fields[IRHO] = {1.0, 0.15, S::sin, k, T::cos, 1.0};
  m.fields[IMX] = {0.4, 0.20, S::sin, k, T::sin, 1.1};
  m.fields[IMY] = {0.1, 0.15, S::cos, k, T::cos, 0.8};
  m.fields[IMZ] = {-0.1, 0.10, S::sin, k, T::cos, 1.3};
  m.fields[IE] = {1.0, 0.12, S::cos, k, T::sin, 0.9};
  m.fields[IBX] = {0.6, 0.0, S::one, 0, T::one, 0};  // uniform B1 in 1D
  m.fields[IBY] = {0.2, 0.18, S::sin, k, T::cos, 1.2};
  m.fields[IBZ] = {-0.3, 0.12, S::cos, k, T::sin, 1.0};
  m.fields[IPSI] = {0.0, 0.10, S::sin, k, T::cos, 0.7};
  return m;
}

ManufacturedSolution mms_uniform() {
  using S = ManufacturedSolution::Shape;
  ManufacturedSolution m;
  m.name = "mms_uniform";
  m.fields[IRHO] = {1.0, 0, S::one, 0, ManufacturedSolution::TimeShape::one, 0};
  m.fields[IE] = {1.0, 0, S::one, 0, ManufacturedSolution::TimeShape::one, 0};
  m.fields[IBX] = {0.3, 0, S::one, 0, ManufacturedSolution::TimeShape::one, 0};
  return m;
}

namespace {
const std::vector<ManufacturedSolution>& registry() {
  static const std::vector<ManufacturedSolution> cases = {mms_walls(), mms_periodic(),
                                                          mms_uniform()};
  return cases;
}
}  // namespace

const ManufacturedSolution& find_manufactured(const std::string& name) {
  for (const auto& m : registry())
    if (m.name == name) return m;
  throw ConfigError("unknown manufactured solution: " + name);
}

std::vector<std::string> manufactured_names() {
  std::vector<std::string> names;
  for (const auto& m : registry()) names.push_back(m.name);
  return names;
}

}  // namespace esmhd
