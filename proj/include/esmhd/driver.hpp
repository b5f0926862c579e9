#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "esmhd/config.hpp"
#include "esmhd/refsol.hpp"

// Command implementations behind the CLI; kept in the library so they can be
// driven directly from the tests.

namespace esmhd {

struct RunSummary {
  double t_final = 0;
  long accepted = 0;
  long rhs_evaluations = 0;
  double max_scaled_balance = 0;  // over every rhs evaluation
  double min_balance = 0, max_balance = 0;
  std::string timeseries_path;
  std::string final_state_path;
};

// Integrates the configuration, writing one audit row per accepted step to
// <prefix>_timeseries.csv and the final nodal state to <prefix>_final.csv.
// audit_mode additionally tracks the balance at every rhs evaluation.
RunSummary run_command(const RunConfig& cfg, bool audit_mode, std::ostream& log);

struct ConvergenceRow {
  int level = 0;
  int elements = 0;
  double h = 0;
  double error = 0;
  double rate = 0;  // NaN on the first level
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  std::string table_path;
};

// Runs `levels` uniform refinements of the configured manufactured-solution
// problem and reports L2 errors and observed orders.
ConvergenceResult converge_command(const RunConfig& cfg, int levels, std::ostream& log);

struct PipeGridSpec {
  int nr = 33;
  int ntheta = 65;
};
std::string refsol_pipe_command(const refsol::PipeParams& params, const PipeGridSpec& grid,
                                const std::string& out_dir, std::ostream& log);

struct CartesianGridSpec {
  double extent = 2.0;  // [-extent, extent]^2
  int nx = 33;
  int nz = 33;
};
// Samples the wire field on a symmetric grid and reports the antisymmetry
// check in the log.
std::string refsol_wire_command(const refsol::WireParams& params, const CartesianGridSpec& grid,
                                const std::string& out_dir, std::ostream& log);

struct LoopGridSpec {
  double r_max = 2.0;
  double z_max = 2.0;
  int nr = 17;
  int nz = 33;
};
std::string refsol_loop_command(const refsol::LoopParams& params, const LoopGridSpec& grid,
                                const std::string& out_dir, std::ostream& log);

}  // namespace esmhd
