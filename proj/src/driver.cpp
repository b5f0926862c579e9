#include "esmhd/driver.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>

#include "esmhd/audit.hpp"
#include "esmhd/csv.hpp"
#include "esmhd/manufactured.hpp"

namespace esmhd {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_final_state(const SemiDiscreteSystem& sys, const Field& u, const std::string& path) {
  CsvWriter csv(path, {"x", "rho", "mom_x", "mom_y", "mom_z", "E", "B_x", "B_y", "B_z", "psi",
                       "v_x", "v_y", "v_z", "T", "p"});
  for (int e = 0; e < sys.mesh.n_elem(); ++e)
    for (int k = 0; k < sys.mesh.nodes_per_elem(); ++k) {
      const int i = e * sys.mesh.nodes_per_elem() + k;
      const PrimState v = cons_to_prim(ConsState::from_array(u[i]), sys.gas);
      csv.row({sys.mesh.node_x(e, k), u[i][0], u[i][1], u[i][2], u[i][3], u[i][4], u[i][5],
               u[i][6], u[i][7], u[i][8], v.v[0], v.v[1], v.v[2], v.T,
               pressure(v, sys.gas)});
    }
}

const std::vector<std::string> kAuditHeader = {
    "t",        "S_total",      "dSdt",
    "DT",       "balance",      "left_adv_cons",
    "left_adv_diss", "left_visc_cons", "left_visc_diss",
    "right_adv_cons", "right_adv_diss", "right_visc_cons",
    "right_visc_diss", "psi_damping", "forcing_entropy",
    "identity_residual", "dt", "dSdt_fd"};

// dSdt_fd finite-differences S_total between accepted steps for comparison
// with the w^T du/dt value (which carries no time-discretization error).
std::vector<double> audit_row(const EntropyReport& r, double dt, double dSdt_fd) {
  return {r.t,
          r.S_total,
          r.dSdt,
          r.DT,
          r.balance,
          r.left.advective_cons,
          r.left.advective_diss,
          r.left.viscous_cons,
          r.left.viscous_diss,
          r.right.advective_cons,
          r.right.advective_diss,
          r.right.viscous_cons,
          r.right.viscous_diss,
          r.psi_damping,
          r.forcing_entropy,
          r.identity_residual,
          dt,
          dSdt_fd};
}

}  // namespace

RunSummary run_command(const RunConfig& cfg, bool audit_mode, std::ostream& log) {
  SemiDiscreteSystem sys = make_system(cfg);
  const std::string out_dir = resolve_output_dir(cfg);
  std::filesystem::create_directories(out_dir);

  RunSummary summary;
  summary.timeseries_path = join_path(out_dir, cfg.prefix + "_timeseries.csv");
  summary.final_state_path = join_path(out_dir, cfg.prefix + "_final.csv");

  // Track the balance at every rhs evaluation; the audit observer sees the
  // exact du/dt the integrator sees.
  bool first = true;
  if (audit_mode) {
    sys.rhs_observer = [&](const EntropyReport& rep) {
      const double b = rep.scaled_balance();
      summary.max_scaled_balance = std::max(summary.max_scaled_balance, std::abs(b));
      if (first) {
        summary.min_balance = summary.max_balance = rep.balance;
        first = false;
      } else {
        summary.min_balance = std::min(summary.min_balance, rep.balance);
        summary.max_balance = std::max(summary.max_balance, rep.balance);
      }
    };
  }

  CsvWriter csv(summary.timeseries_path, kAuditHeader);
  Field u0 = initial_field(cfg, sys);

  double prev_S = 0.0, prev_t = 0.0;
  // row at t = 0
  {
    Field dudt;
    RhsDiagnostics diag;
    sys.rhs(u0, 0.0, dudt, &diag);
    const EntropyReport rep = audit(sys, u0, dudt, diag, 0.0);
    prev_S = rep.S_total;
    csv.row(audit_row(rep, 0.0, std::nan("")));
  }

  const AdvanceResult res =
      advance(sys, std::move(u0), 0.0, cfg.t_end, cfg.integrator,
              [&](double t, double dt, const Field& u) {
                Field dudt;
                RhsDiagnostics diag;
                sys.rhs(u, t, dudt, &diag);
                const EntropyReport rep = audit(sys, u, dudt, diag, t);
                csv.row(audit_row(rep, dt, (rep.S_total - prev_S) / (t - prev_t)));
                prev_S = rep.S_total;
                prev_t = t;
              });

  write_final_state(sys, res.u, summary.final_state_path);
  summary.t_final = res.t;
  summary.accepted = res.accepted;
  summary.rhs_evaluations = sys.rhs_evaluations;
  log << "t_final=" << CsvWriter::format(res.t) << " accepted_steps=" << res.accepted
      << " rhs_evaluations=" << sys.rhs_evaluations << "\n";
  if (audit_mode)
    log << "max_scaled_balance=" << CsvWriter::format(summary.max_scaled_balance)
        << " balance_range=[" << CsvWriter::format(summary.min_balance) << ","
        << CsvWriter::format(summary.max_balance) << "]\n";
  return summary;
}

ConvergenceResult converge_command(const RunConfig& cfg, int levels, std::ostream& log) {
  if (levels < 2) throw ConfigError("convergence study needs at least 2 levels");
  const auto* mi = std::get_if<ManufacturedInitial>(&cfg.initial);
  if (!mi || !cfg.forcing_mms)
    throw ConfigError("convergence study needs a manufactured initial state and forcing");
  const ManufacturedSolution& mms = find_manufactured(*cfg.forcing_mms);

  ConvergenceResult result;
  const std::string out_dir = resolve_output_dir(cfg);
  std::filesystem::create_directories(out_dir);
  result.table_path = join_path(out_dir, cfg.prefix + "_convergence.csv");
  CsvWriter csv(result.table_path, {"level", "elements", "h", "error", "rate"});

  double prev_error = 0;
  for (int level = 0; level < levels; ++level) {
    RunConfig level_cfg = cfg;
    level_cfg.elements = cfg.elements << level;
    SemiDiscreteSystem sys = make_system(level_cfg);
    Field u = initial_field(level_cfg, sys);
    const AdvanceResult res = advance(sys, std::move(u), mi->t0, mi->t0 + cfg.t_end,
                                      cfg.integrator);
    const Field exact = sys.from_primitive(
        [&](double x) { return mms.prim(x, res.t); });
    const double err = discrete_l2_error(sys.mesh, res.u, exact);

    ConvergenceRow row;
    row.level = level;
    row.elements = level_cfg.elements;
    row.h = (cfg.x1 - cfg.x0) / level_cfg.elements;
    row.error = err;
    // the rate is undefined on the first level and meaningless at roundoff
    const bool at_roundoff = err < 1e-13 || prev_error < 1e-13;
    row.rate = (level == 0 || at_roundoff) ? std::nan("") : std::log2(prev_error / err);
    result.rows.push_back(row);
    csv.row({static_cast<double>(row.level), static_cast<double>(row.elements), row.h,
             row.error, row.rate});
    log << "level=" << row.level << " elements=" << row.elements
        << " error=" << CsvWriter::format(row.error);
    if (level > 0)
      log << " rate=" << (std::isnan(row.rate) ? "undefined" : CsvWriter::format(row.rate));
    log << "\n";
    prev_error = err;
  }
  return result;
}

std::string refsol_pipe_command(const refsol::PipeParams& params, const PipeGridSpec& grid,
                                const std::string& out_dir, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const refsol::PipeSeries series(params);
  const std::string path = join_path(out_dir, "pipe_field.csv");
  CsvWriter csv(path, {"r", "theta", "x", "y", "u", "b"});
  for (int ir = 0; ir < grid.nr; ++ir) {
    const double r = static_cast<double>(ir) / (grid.nr - 1);
    for (int it = 0; it < grid.ntheta; ++it) {
      const double theta = 2.0 * M_PI * it / (grid.ntheta - 1);
      const refsol::PipeValue v = series.eval_normalized(r, theta);
      csv.row({r, theta, r * std::cos(theta), r * std::sin(theta), v.u, v.b});
    }
  }
  double max_u = 0;
  for (int ir = 0; ir < grid.nr; ++ir)
    for (int it = 0; it < grid.ntheta; ++it) {
      const double r = static_cast<double>(ir) / (grid.nr - 1);
      const double theta = 2.0 * M_PI * it / (grid.ntheta - 1);
      max_u = std::max(max_u, std::abs(series.eval_normalized(r, theta).u));
    }
  log << "pipe Ha=" << params.Ha << " c=" << (params.c_infinite ? "inf" : std::to_string(params.c))
      << " max|u|=" << CsvWriter::format(max_u) << "\n";
  return path;
}

std::string refsol_wire_command(const refsol::WireParams& params, const CartesianGridSpec& grid,
                                const std::string& out_dir, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const std::string path = join_path(out_dir, "wire_field.csv");
  CsvWriter csv(path, {"x", "z", "B_x", "B_y", "B_z"});
  double antisym = 0;
  for (int ix = 0; ix < grid.nx; ++ix) {
    // symmetric grid about x = 0 (odd counts include the axis)
    const double x = -grid.extent + 2.0 * grid.extent * ix / (grid.nx - 1);
    for (int iz = 0; iz < grid.nz; ++iz) {
      const double z = -grid.extent + 2.0 * grid.extent * iz / (grid.nz - 1);
      const Vec3 B = refsol::wire_field(x, z, params);
      csv.row({x, z, B[0], B[1], B[2]});
      const Vec3 Bm = refsol::wire_field(-x, z, params);
      antisym = std::max({antisym, std::abs(B[2] + Bm[2]), std::abs(B[0] - Bm[0])});
    }
  }
  log << "wire antisymmetry_residual=" << CsvWriter::format(antisym)
      << (antisym < 1e-12 ? " (ok)" : " (FAILED)") << "\n";
  return path;
}

std::string refsol_loop_command(const refsol::LoopParams& params, const LoopGridSpec& grid,
                                const std::string& out_dir, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const std::string path = join_path(out_dir, "loop_field.csv");
  // bz_onaxis carries the closed-form on-axis profile for cross-checking
  CsvWriter csv(path, {"r", "z", "B_r", "B_z", "bz_onaxis"});
  double onaxis_dev = 0;
  for (int ir = 0; ir < grid.nr; ++ir) {
    const double r = grid.r_max * ir / (grid.nr - 1);
    for (int iz = 0; iz < grid.nz; ++iz) {
      const double z = -grid.z_max + 2.0 * grid.z_max * iz / (grid.nz - 1);
      if (std::abs(r - params.a) < 1e-9 && std::abs(z) < 1e-9) continue;  // filament
      const refsol::LoopField f = refsol::loop_field(r, z, params);
      const double a2 = params.a * params.a;
      const double bz_axis =
          params.mu0 * params.I * a2 / (2.0 * std::pow(a2 + z * z, 1.5));
      csv.row({r, z, f.B_r, f.B_z, bz_axis});
      if (r == 0.0) onaxis_dev = std::max(onaxis_dev, std::abs(f.B_z - bz_axis));
    }
  }
  log << "loop onaxis_deviation=" << CsvWriter::format(onaxis_dev) << "\n";
  return path;
}

}  // namespace esmhd
