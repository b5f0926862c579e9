#include "esmhd/solver.hpp"

#include <cmath>
#include <sstream>

#include "esmhd/audit.hpp"

namespace esmhd {

Mesh1D Mesh1D::uniform(double x0, double x1, int n_elem, int p) {
  if (!(x1 > x0) || n_elem < 1) throw ConfigError("invalid mesh extents");
  std::vector<double> b(n_elem + 1);
  const double h = (x1 - x0) / n_elem;
  for (int e = 0; e <= n_elem; ++e) b[e] = x0 + e * h;
  b.back() = x1;
  return from_boundaries(std::move(b), p);
}

Mesh1D Mesh1D::from_boundaries(std::vector<double> bounds, int p) {
  if (bounds.size() < 2) throw ConfigError("mesh needs at least one element");
  for (size_t e = 0; e + 1 < bounds.size(); ++e)
    if (!(bounds[e + 1] > bounds[e])) throw ConfigError("element boundaries must increase");
  Mesh1D m;
  m.sbp = build_sbp(p);
  m.bounds = std::move(bounds);
  return m;
}

double discrete_l2_error(const Mesh1D& mesh, const std::vector<double>& numeric,
                         const std::vector<double>& reference) {
  if (numeric.size() != reference.size() || static_cast<int>(numeric.size()) != mesh.n_nodes())
    throw ShapeMismatch("discrete_l2_error");
  double acc = 0;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    const double e = numeric[i] - reference[i];
    acc += mesh.node_weight(i) * e * e;
  }
  return std::sqrt(acc) / mesh.measure();
}

double discrete_l2_error(const Mesh1D& mesh, const Field& numeric, const Field& reference) {
  if (numeric.size() != reference.size() || static_cast<int>(numeric.size()) != mesh.n_nodes())
    throw ShapeMismatch("discrete_l2_error");
  double acc = 0;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    double e2 = 0;
    for (int c = 0; c < 9; ++c) {
      const double e = numeric[i][c] - reference[i][c];
      e2 += e * e;
    }
    acc += mesh.node_weight(i) * e2;
  }
  return std::sqrt(acc) / mesh.measure();
}

void SemiDiscreteSystem::validate() const {
  gas.validate();
  glm.validate();
  diss.validate();
  const bool lp = std::holds_alternative<PeriodicBc>(left_bc);
  const bool rp = std::holds_alternative<PeriodicBc>(right_bc);
  if (lp != rp) throw ConfigError("periodic requires both ends periodic");
  if (mesh.n_elem() < 1) throw ConfigError("empty mesh");
}

Field SemiDiscreteSystem::constant_field(const ConsState& u) const {
  return Field(mesh.n_nodes(), u.as_array());
}

Field SemiDiscreteSystem::from_primitive(const std::function<PrimState(double)>& f) const {
  Field u(mesh.n_nodes());
  for (int e = 0; e < mesh.n_elem(); ++e)
    for (int k = 0; k < mesh.nodes_per_elem(); ++k)
      u[e * mesh.nodes_per_elem() + k] = prim_to_cons(f(mesh.node_x(e, k)), gas).as_array();
  return u;
}

// Resolved ghost data for one domain boundary.
struct SemiDiscreteSystem::BoundaryData {
  bool periodic = false;
  int partner = -1;      // periodic partner node
  PrimState adv_state;   // state entering f* and DISS^a
  PrimState visc_state;  // state entering w-hat, f-hat^nu and DISS^nu
  State9 visc_w{};
  State9 g_plus{};       // ghost entropy-variable gradient
  State9 fnu_plus{};     // ghost viscous flux
  double lambda = 0;     // |lambda|max against adv_state (LLF on)
};

namespace {

Grad39 embed_x_gradient(const State9& theta_x) {
  Grad39 t{};
  t[0] = theta_x;
  return t;
}

}  // namespace

void SemiDiscreteSystem::rhs(const Field& u, double t, Field& dudt, RhsDiagnostics* diag) const {
  ++rhs_evaluations;
  RhsDiagnostics local;
  RhsDiagnostics* d = diag ? diag : (rhs_observer ? &local : nullptr);
  assemble(u, t, dudt, d);
  if (rhs_observer) rhs_observer(audit(*this, u, dudt, d ? *d : local, t));
}

void SemiDiscreteSystem::compute_gradients(const Field& u, double t,
                                           std::vector<State9>& g) const {
  Field dudt;
  RhsDiagnostics diag;
  assemble(u, t, dudt, &diag);
  g = std::move(diag.g);
}

void SemiDiscreteSystem::assemble(const Field& u, double t, Field& dudt,
                                  RhsDiagnostics* diag) const {
  const int npe = mesh.nodes_per_elem();
  const int ne = mesh.n_elem();
  const int nn = ne * npe;
  if (static_cast<int>(u.size()) != nn) throw ShapeMismatch("state field size");
  dudt.assign(nn, State9{});

  // Primitive states, with node locations attached to positivity failures.
  std::vector<PrimState> prim(nn);
  kernels::NodeBatch batch;
  batch.resize(nn);
  for (int i = 0; i < nn; ++i) {
    try {
      prim[i] = cons_to_prim(ConsState::from_array(u[i]), gas);
    } catch (const Error& err) {
      std::ostringstream os;
      os << err.what() << " at node " << i << ", x = " << mesh.node_x(i / npe, i % npe);
      throw Error(os.str());
    }
    batch.set(i, prim[i], gas);
  }

  std::vector<State9> w(nn);
  kernels::entropy_vars_batch(batch, gas, w.data());

  // Boundary ghost states (ghost gradients attached once g is known).
  const int left_node = 0, right_node = nn - 1;
  BoundaryData bd[2];
  const BcSpec* bcs[2] = {&left_bc, &right_bc};
  for (int side = 0; side < 2; ++side) {
    BoundaryData& b = bd[side];
    const int inode = side == 0 ? left_node : right_node;
    const Vec3 n = side == 0 ? Vec3{-1, 0, 0} : Vec3{1, 0, 0};
    if (std::holds_alternative<PeriodicBc>(*bcs[side])) {
      b.periodic = true;
      b.partner = side == 0 ? right_node : left_node;
      b.adv_state = b.visc_state = prim[b.partner];
      b.visc_w = w[b.partner];
    } else if (const WallBc* wb = std::get_if<WallBc>(bcs[side])) {
      BoundaryFace face{n, prim[inode], {}};
      b.adv_state = advective_ghost(face, wb->wall);
      b.visc_state = wall_viscous_ghost(face, wb->wall, t, gas).state;
      b.visc_w = entropy_vars(b.visc_state, gas).w;
    } else if (const InletBc* ib = std::get_if<InletBc>(bcs[side])) {
      BoundaryFace face{n, prim[inode], {}};
      b.adv_state = b.visc_state = inlet_ghost(face, ib->inlet, gas).state;
      b.visc_w = entropy_vars(b.visc_state, gas).w;
    } else {
      BoundaryFace face{n, prim[inode], {}};
      b.adv_state = b.visc_state =
          outlet_ghost(face, std::get<OutletBc>(*bcs[side]).p_out, gas).state;
      b.visc_w = entropy_vars(b.visc_state, gas).w;
    }
    if (diss.llf_enabled) b.lambda = max_wave_speed(prim[inode], b.adv_state, gas, glm);
  }

  // BR1 gradients of the entropy variables:
  //   J_k w_k g_k = sum_m Q_km w_m + d_{kN}(w-hat - w_N) - d_{k0}(w-hat - w_0)
  std::vector<State9> g(nn);
  for (int e = 0; e < ne; ++e) {
    const double J = mesh.jacobian(e);
    for (int k = 0; k < npe; ++k) {
      const int i = e * npe + k;
      State9 acc{};
      for (int m = 0; m < npe; ++m) acc += mesh.sbp.q(k, m) * w[e * npe + m];
      if (k == npe - 1) {
        const State9& w_r = (e == ne - 1) ? bd[1].visc_w : w[i + 1];
        acc += 0.5 * (w_r - w[i]);
      }
      if (k == 0) {
        const State9& w_l = (e == 0) ? bd[0].visc_w : w[i - 1];
        acc += (-0.5) * (w_l - w[i]);
      }
      g[i] = (1.0 / (J * mesh.sbp.weights[k])) * acc;
    }
  }

  // Nodal viscous fluxes f^nu_k = C^nu(u_k) g_k.
  std::vector<State9> fnu(nn);
  for (int i = 0; i < nn; ++i) fnu[i] = cnu_matrix(prim[i], gas) * g[i];

  // Ghost gradients and viscous fluxes at the domain boundaries (three-step
  // primitive-gradient transformation for walls, stripped normal gradients
  // for inlet/outlet, partner data for periodic).
  for (int side = 0; side < 2; ++side) {
    BoundaryData& b = bd[side];
    if (b.periodic) {
      b.g_plus = g[b.partner];
      b.fnu_plus = fnu[b.partner];
      continue;
    }
    const int inode = side == 0 ? left_node : right_node;
    const Vec3 n = side == 0 ? Vec3{-1, 0, 0} : Vec3{1, 0, 0};
    const State9 theta_x = dvdw_jacobian(prim[inode], gas) * g[inode];
    BoundaryFace face{n, prim[inode], embed_x_gradient(theta_x)};
    Grad39 theta_plus{};
    if (const WallBc* wb = std::get_if<WallBc>(bcs[side])) {
      theta_plus = wall_viscous_ghost(face, wb->wall, t, gas).theta;
    } else if (const InletBc* ib = std::get_if<InletBc>(bcs[side])) {
      theta_plus = inlet_ghost(face, ib->inlet, gas).theta;
    } else {
      theta_plus = outlet_ghost(face, std::get<OutletBc>(*bcs[side]).p_out, gas).theta;
    }
    b.g_plus = dwdv_jacobian(b.visc_state, gas) * theta_plus[0];
    b.fnu_plus = cnu_matrix(b.visc_state, gas) * b.g_plus;
  }

  // Residual assembly in the J w du/dt orientation:
  //   J_j w_j du_j/dt = -F^a_j + F^nu_j + J_j w_j (r_j + forcing_j)
  FaceBreakdown faces[2];
  double wdotr = 0, forcing_entropy = 0;
  for (int e = 0; e < ne; ++e) {
    const double J = mesh.jacobian(e);
    std::vector<State9> adv_vol(npe, State9{});
    kernels::element_volume_term(batch, e * npe, npe, mesh.sbp.Q.data(), gas, glm.c_h,
                                 adv_vol.data());

    for (int k = 0; k < npe; ++k) {
      const int i = e * npe + k;
      State9 acc = (-1.0) * adv_vol[k];
      for (int m = 0; m < npe; ++m) acc += mesh.sbp.q(k, m) * fnu[e * npe + m];

      if (k == 0 || k == npe - 1) {
        const bool is_left_face = (k == 0);
        const bool domain_face = is_left_face ? (e == 0) : (e == ne - 1);

        PrimState nb_adv, nb_visc;
        State9 nb_visc_w, nb_fnu;
        double lambda_bc = 0;
        if (domain_face) {
          const BoundaryData& b = bd[is_left_face ? 0 : 1];
          nb_adv = b.adv_state;
          nb_visc = b.visc_state;
          nb_visc_w = b.visc_w;
          nb_fnu = b.fnu_plus;
          lambda_bc = b.lambda;
        } else {
          const int j = is_left_face ? i - 1 : i + 1;
          nb_adv = nb_visc = prim[j];
          nb_visc_w = w[j];
          nb_fnu = fnu[j];
        }

        const State9 f_self = nonsym_flux(prim[i], prim[i], gas, glm);
        const State9 f_cross = nonsym_flux(prim[i], nb_adv, gas, glm);
        State9 diss_a{};
        if (diss.llf_enabled) diss_a = llf_dissipation(prim[i], nb_adv, gas, glm);
        const State9 fnu_hat = 0.5 * (fnu[i] + nb_fnu);
        State9 diss_nu{};
        if (diss.beta_visc > 0)
          diss_nu = viscous_interface_dissipation(prim[i], nb_visc, nb_visc_w - w[i], gas, diss);

        if (is_left_face) {
          acc += (-1.0) * (f_self - f_cross - diss_a);  // from -F^a
          acc += fnu[i] - fnu_hat + diss_nu;            // from +F^nu
        } else {
          acc += f_self - f_cross + diss_a;
          acc += (-1.0) * (fnu[i] - fnu_hat - diss_nu);
        }

        if (domain_face && diag) {
          FaceBreakdown& fb = faces[is_left_face ? 0 : 1];
          const double adv_cons = dot(w[i], f_cross) - entropy_potential(prim[i], gas, glm);
          fb.advective_cons = is_left_face ? adv_cons : -adv_cons;
          fb.advective_diss = dot(w[i], diss_a);
          const State9 w_hat_minus_w = 0.5 * (nb_visc_w - w[i]);
          const double visc_cons = dot(w_hat_minus_w, fnu[i]) + dot(w[i], fnu_hat);
          fb.viscous_cons = is_left_face ? -visc_cons : visc_cons;
          fb.viscous_diss = dot(w[i], diss_nu);
          if (is_left_face)
            diag->lambda_left = lambda_bc;
          else
            diag->lambda_right = lambda_bc;
        }
      }

      const double jw = J * mesh.sbp.weights[k];
      State9 result = (1.0 / jw) * acc;
      const State9 r = source_term(prim[i], gas, glm);
      result += r;
      if (diag) wdotr += jw * dot(w[i], r);
      if (forcing) {
        const State9 fc = forcing(mesh.node_x(e, k), t);
        result += fc;
        if (diag) forcing_entropy += jw * dot(w[i], fc);
      }
      dudt[i] = result;
    }
  }

  if (diag) {
    diag->w = std::move(w);
    diag->g = std::move(g);
    diag->fnu = std::move(fnu);
    diag->left_face = faces[0];
    diag->right_face = faces[1];
    diag->wdotr = wdotr;
    diag->forcing_entropy = forcing_entropy;
  }
}

}  // namespace esmhd
