#include <CLI11.hpp>
#include <iostream>

#include "esmhd/driver.hpp"

// Command-line driver: time integration runs, entropy audits, convergence
// sweeps, and reference-solution sampling.  See the README for the CSV
// schemas.

int main(int argc, char** argv) {
  CLI::App app{"entropy-stable 1D GLM-MHD solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;

  auto* run = app.add_subcommand("run", "integrate a configuration and write CSV output");
  run->add_option("config", config_path, "JSON run configuration")->required();
  run->add_option("--out", out_override, "output directory override");

  auto* audit_cmd =
      app.add_subcommand("audit", "run with an entropy audit at every rhs evaluation");
  audit_cmd->add_option("config", config_path, "JSON run configuration")->required();
  audit_cmd->add_option("--out", out_override, "output directory override");

  int levels = 4;
  auto* conv = app.add_subcommand("converge", "manufactured-solution convergence study");
  conv->add_option("config", config_path, "JSON run configuration")->required();
  conv->add_option("--levels", levels, "number of uniform refinements");
  conv->add_option("--out", out_override, "output directory override");

  auto* refsol_cmd = app.add_subcommand("refsol", "sample an analytical reference solution");
  refsol_cmd->require_subcommand(1);
  std::string refsol_out = ".";

  esmhd::refsol::PipeParams pipe;
  std::string pipe_c = "0";
  esmhd::PipeGridSpec pipe_grid;
  auto* pipe_cmd = refsol_cmd->add_subcommand("pipe", "MHD pipe flow series solution");
  pipe_cmd->add_option("--Ha", pipe.Ha, "Hartmann number");
  pipe_cmd->add_option("--c", pipe_c, "wall conductance parameter (number or 'inf')");
  pipe_cmd->add_option("--N0", pipe.N0, "series truncation N0");
  pipe_cmd->add_option("--N1", pipe.N1, "series truncation N1");
  pipe_cmd->add_option("--S0", pipe.S0, "series truncation S0");
  pipe_cmd->add_option("--S1", pipe.S1, "series truncation S1");
  pipe_cmd->add_option("--nr", pipe_grid.nr, "radial samples");
  pipe_cmd->add_option("--ntheta", pipe_grid.ntheta, "angular samples");
  pipe_cmd->add_option("--out", refsol_out, "output directory");

  esmhd::refsol::WireParams wire;
  esmhd::CartesianGridSpec wire_grid;
  auto* wire_cmd = refsol_cmd->add_subcommand("wire", "rectangular wire magnetic field");
  wire_cmd->add_option("--width", wire.w, "cross-section width");
  wire_cmd->add_option("--height", wire.h, "cross-section thickness");
  wire_cmd->add_option("--density", wire.i, "current density");
  wire_cmd->add_option("--extent", wire_grid.extent, "half-extent of the sampling grid");
  wire_cmd->add_option("--nx", wire_grid.nx, "x samples");
  wire_cmd->add_option("--nz", wire_grid.nz, "z samples");
  wire_cmd->add_option("--out", refsol_out, "output directory");

  esmhd::refsol::LoopParams loop;
  esmhd::LoopGridSpec loop_grid;
  auto* loop_cmd = refsol_cmd->add_subcommand("loop", "circular current loop magnetic field");
  loop_cmd->add_option("--radius", loop.a, "loop radius");
  loop_cmd->add_option("--current", loop.I, "total current");
  loop_cmd->add_option("--rmax", loop_grid.r_max, "radial extent");
  loop_cmd->add_option("--zmax", loop_grid.z_max, "axial half-extent");
  loop_cmd->add_option("--nr", loop_grid.nr, "radial samples");
  loop_cmd->add_option("--nz", loop_grid.nz, "axial samples");
  loop_cmd->add_option("--out", refsol_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed() || audit_cmd->parsed()) {
      esmhd::RunConfig cfg = esmhd::load_config_file(config_path);
      if (!out_override.empty()) cfg.out_dir = out_override;
      const esmhd::RunSummary s = esmhd::run_command(cfg, audit_cmd->parsed(), std::cout);
      std::cout << "wrote " << s.timeseries_path << " and " << s.final_state_path << "\n";
    } else if (conv->parsed()) {
      esmhd::RunConfig cfg = esmhd::load_config_file(config_path);
      if (!out_override.empty()) cfg.out_dir = out_override;
      const esmhd::ConvergenceResult r = esmhd::converge_command(cfg, levels, std::cout);
      std::cout << "wrote " << r.table_path << "\n";
    } else if (pipe_cmd->parsed()) {
      if (pipe_c == "inf") {
        pipe.c_infinite = true;
      } else {
        pipe.c = std::stod(pipe_c);
      }
      std::cout << "wrote " << esmhd::refsol_pipe_command(pipe, pipe_grid, refsol_out, std::cout)
                << "\n";
    } else if (wire_cmd->parsed()) {
      std::cout << "wrote " << esmhd::refsol_wire_command(wire, wire_grid, refsol_out, std::cout)
                << "\n";
    } else if (loop_cmd->parsed()) {
      std::cout << "wrote " << esmhd::refsol_loop_command(loop, loop_grid, refsol_out, std::cout)
                << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
