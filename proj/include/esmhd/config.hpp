#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "esmhd/integrate.hpp"
#include "esmhd/kernels.hpp"
#include "esmhd/solver.hpp"

namespace esmhd {

// The six non-dimensional numbers; mapped onto the code-unit gas parameters
// as R = 1/(gamma Ma^2), mu0 = Mm^2, mu_ns = 1/Re, mu_r = Mm^2/Rm,
// kappa = cp mu_ns / Pr.
struct NondimNumbers {
  double gamma = 1.4;
  double Ma = 1.0;
  double Re = 1.0;
  double Pr = 1.0;
  double Mm = 1.0;
  double Rm = 1.0;

  void validate() const;
  GasParams to_gas() const;
};

struct UniformInitial {
  PrimState state;
};
// Deterministic smooth perturbation of a base state (fixed trigonometric
// profile scaled by amplitude).
struct PerturbedInitial {
  PrimState base;
  double amplitude = 0.05;
};
struct ManufacturedInitial {
  std::string name = "mms_walls";
  double t0 = 0.0;
};
using InitialSpec = std::variant<UniformInitial, PerturbedInitial, ManufacturedInitial>;

// Versioned run configuration; unknown JSON keys are errors.
struct RunConfig {
  int schema_version = 1;
  double x0 = 0.0, x1 = 1.0;
  int elements = 8;
  int degree = 3;
  std::optional<std::vector<double>> element_boundaries;  // non-uniform meshes
  std::optional<NondimNumbers> nondim;  // retained for round-tripping
  GasParams gas;
  GlmParams glm;
  DissParams diss;
  BcSpec left_bc = PeriodicBc{};
  BcSpec right_bc = PeriodicBc{};
  double left_g_heat = 0.0, right_g_heat = 0.0;  // constant wall heat entropy flux
  InitialSpec initial = UniformInitial{};
  std::optional<std::string> forcing_mms;  // manufactured forcing
  TimeIntegrator integrator;
  double t_end = 1.0;
  std::string out_dir = ".";
  std::string prefix = "run";
  std::optional<kernels::Backend> simd;

  void validate() const;
};

RunConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);
RunConfig load_config_file(const std::string& path);

// Instantiate the semi-discrete system (and apply the simd override).
SemiDiscreteSystem make_system(const RunConfig& cfg);
Field initial_field(const RunConfig& cfg, const SemiDiscreteSystem& sys);

// Output directory resolution: ESMHD_OUTPUT_DIR overrides the config value.
std::string resolve_output_dir(const RunConfig& cfg);

PrimState prim_from_json(const nlohmann::json& j);
nlohmann::json prim_to_json(const PrimState& v);

}  // namespace esmhd
