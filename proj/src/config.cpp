#include "esmhd/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "esmhd/manufactured.hpp"

namespace esmhd {

using nlohmann::json;

namespace {

// Fail-fast key checking: unknown keys are configuration errors.
void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double get_num(const json& j, const std::string& key, std::optional<double> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError("missing key '" + key + "'");
  }
  if (!j[key].is_number()) throw ConfigError("key '" + key + "' must be a number");
  return j[key].get<double>();
}

Vec3 get_vec3(const json& j, const std::string& key, std::optional<Vec3> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError("missing key '" + key + "'");
  }
  const auto& a = j[key];
  if (!a.is_array() || a.size() != 3) throw ConfigError("key '" + key + "' must be a 3-array");
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

WallSpec parse_wall(const json& j, double& g_heat_out) {
  check_keys(j, "wall boundary", {"kind", "velocity", "magnetic", "g_heat"});
  WallSpec wall;
  wall.v_wall = get_vec3(j, "velocity", Vec3{0, 0, 0});
  g_heat_out = get_num(j, "g_heat", 0.0);
  if (g_heat_out != 0.0) {
    const double g0 = g_heat_out;
    wall.g_heat = [g0](double) { return g0; };
  }
  if (!j.contains("magnetic")) throw ConfigError("wall boundary needs a 'magnetic' block");
  const json& m = j["magnetic"];
  check_keys(m, "magnetic wall", {"kind", "B0", "c_d"});
  const std::string kind = m.value("kind", "");
  const Vec3 B0 = get_vec3(m, "B0", Vec3{0, 0, 0});
  if (kind == "insulating") {
    if (m.contains("c_d")) throw ConfigError("insulating wall takes no c_d");
    wall.magnetic = Insulating{B0};
  } else if (kind == "conducting") {
    wall.magnetic = Conducting{get_num(m, "c_d"), B0};
  } else if (kind == "perfect") {
    if (m.contains("c_d")) throw ConfigError("perfectly conducting wall takes no c_d");
    wall.magnetic = PerfectConducting{B0};
  } else {
    throw ConfigError("magnetic wall kind must be insulating|conducting|perfect");
  }
  return wall;
}

BcSpec parse_bc(const json& j, double& g_heat_out) {
  g_heat_out = 0.0;
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("boundary needs a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "periodic") {
    check_keys(j, "periodic boundary", {"kind"});
    return PeriodicBc{};
  }
  if (kind == "wall") return WallBc{parse_wall(j, g_heat_out)};
  if (kind == "inlet") {
    check_keys(j, "inlet boundary", {"kind", "rho_ref", "T_ref", "B0", "mdot", "area"});
    InletSpec in;
    in.rho_ref = get_num(j, "rho_ref", 1.0);
    in.T_ref = get_num(j, "T_ref", 1.0);
    in.B0 = get_vec3(j, "B0", Vec3{0, 0, 0});
    in.mdot = get_num(j, "mdot", 0.0);
    in.area = get_num(j, "area", 1.0);
    return InletBc{in};
  }
  if (kind == "outlet") {
    check_keys(j, "outlet boundary", {"kind", "p_out"});
    return OutletBc{get_num(j, "p_out")};
  }
  throw ConfigError("boundary kind must be periodic|wall|inlet|outlet");
}

json bc_to_json(const BcSpec& bc, double g_heat) {
  json j;
  if (std::holds_alternative<PeriodicBc>(bc)) {
    j["kind"] = "periodic";
  } else if (const WallBc* wb = std::get_if<WallBc>(&bc)) {
    j["kind"] = "wall";
    j["velocity"] = vec3_to_json(wb->wall.v_wall);
    j["g_heat"] = g_heat;
    json m;
    if (const auto* ins = std::get_if<Insulating>(&wb->wall.magnetic)) {
      m["kind"] = "insulating";
      m["B0"] = vec3_to_json(ins->B0);
    } else if (const auto* c = std::get_if<Conducting>(&wb->wall.magnetic)) {
      m["kind"] = "conducting";
      m["c_d"] = c->c_d;
      m["B0"] = vec3_to_json(c->B0);
    } else {
      const auto& p = std::get<PerfectConducting>(wb->wall.magnetic);
      m["kind"] = "perfect";
      m["B0"] = vec3_to_json(p.B0);
    }
    j["magnetic"] = m;
  } else if (const InletBc* ib = std::get_if<InletBc>(&bc)) {
    j["kind"] = "inlet";
    j["rho_ref"] = ib->inlet.rho_ref;
    j["T_ref"] = ib->inlet.T_ref;
    j["B0"] = vec3_to_json(ib->inlet.B0);
    j["mdot"] = ib->inlet.mdot;
    j["area"] = ib->inlet.area;
  } else {
    j["kind"] = "outlet";
    j["p_out"] = std::get<OutletBc>(bc).p_out;
  }
  return j;
}

}  // namespace

void NondimNumbers::validate() const {
  if (!(gamma > 1.0)) throw ConfigError("gamma must be > 1");
  for (double v : {Ma, Re, Pr, Mm, Rm})
    if (!(v > 0.0)) throw ConfigError("non-dimensional numbers must be > 0");
}

GasParams NondimNumbers::to_gas() const {
  validate();
  GasParams gas;
  gas.gamma = gamma;
  gas.R = 1.0 / (gamma * Ma * Ma);
  gas.mu0 = Mm * Mm;
  gas.mu_ns = 1.0 / Re;
  gas.mu_r = Mm * Mm / Rm;
  gas.kappa = gas.cp() * gas.mu_ns / Pr;
  gas.T_ref = 1.0;
  gas.rho_ref = 1.0;
  return gas;
}

PrimState prim_from_json(const json& j) {
  check_keys(j, "state", {"rho", "v", "T", "B", "psi"});
  PrimState v;
  v.rho = get_num(j, "rho", 1.0);
  v.v = get_vec3(j, "v", Vec3{0, 0, 0});
  v.T = get_num(j, "T", 1.0);
  v.B = get_vec3(j, "B", Vec3{0, 0, 0});
  v.psi = get_num(j, "psi", 0.0);
  return v;
}

json prim_to_json(const PrimState& v) {
  json j;
  j["rho"] = v.rho;
  j["v"] = vec3_to_json(v.v);
  j["T"] = v.T;
  j["B"] = vec3_to_json(v.B);
  j["psi"] = v.psi;
  return j;
}

void RunConfig::validate() const {
  gas.validate();
  glm.validate();
  diss.validate();
  integrator.validate();
  if (!(x1 > x0)) throw ConfigError("domain extents must satisfy x1 > x0");
  if (elements < 1) throw ConfigError("need at least one element");
  if (degree < 1 || degree > 12) throw ConfigError("degree must be in [1, 12]");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
}

RunConfig parse_config(const json& j) {
  check_keys(j, "config",
             {"schema_version", "domain", "gas", "nondim", "glm", "dissipation", "boundary",
              "initial", "forcing", "integrator", "output", "simd"});
  RunConfig cfg;
  if (!j.contains("schema_version")) throw ConfigError("missing schema_version");
  cfg.schema_version = j["schema_version"].get<int>();
  if (cfg.schema_version != 1) throw ConfigError("unsupported schema_version");

  if (!j.contains("domain")) throw ConfigError("missing domain block");
  const json& dom = j["domain"];
  check_keys(dom, "domain", {"x0", "x1", "elements", "degree", "element_boundaries"});
  cfg.degree = static_cast<int>(get_num(dom, "degree", 3));
  if (dom.contains("element_boundaries")) {
    // per-element sizes, explicitly listed; supersedes x0/x1/elements
    if (dom.contains("x0") || dom.contains("x1") || dom.contains("elements"))
      throw ConfigError("element_boundaries replaces x0/x1/elements");
    const auto& b = dom["element_boundaries"];
    if (!b.is_array() || b.size() < 2) throw ConfigError("element_boundaries needs >= 2 entries");
    cfg.element_boundaries.emplace();
    for (const auto& v : b) cfg.element_boundaries->push_back(v.get<double>());
    cfg.x0 = cfg.element_boundaries->front();
    cfg.x1 = cfg.element_boundaries->back();
    cfg.elements = static_cast<int>(cfg.element_boundaries->size()) - 1;
  } else {
    cfg.x0 = get_num(dom, "x0", 0.0);
    cfg.x1 = get_num(dom, "x1", 1.0);
    cfg.elements = static_cast<int>(get_num(dom, "elements", 8));
  }

  if (j.contains("gas") == j.contains("nondim"))
    throw ConfigError("exactly one of 'gas' or 'nondim' must be given");
  if (j.contains("gas")) {
    const json& g = j["gas"];
    check_keys(g, "gas", {"gamma", "R", "mu0", "mu_ns", "mu_r", "kappa", "T_ref", "rho_ref"});
    cfg.gas.gamma = get_num(g, "gamma", 1.4);
    cfg.gas.R = get_num(g, "R", 1.0);
    cfg.gas.mu0 = get_num(g, "mu0", 1.0);
    cfg.gas.mu_ns = get_num(g, "mu_ns", 0.0);
    cfg.gas.mu_r = get_num(g, "mu_r", 0.0);
    cfg.gas.kappa = get_num(g, "kappa", 0.0);
    cfg.gas.T_ref = get_num(g, "T_ref", 1.0);
    cfg.gas.rho_ref = get_num(g, "rho_ref", 1.0);
  } else {
    const json& n = j["nondim"];
    check_keys(n, "nondim", {"gamma", "Ma", "Re", "Pr", "Mm", "Rm"});
    NondimNumbers nd;
    nd.gamma = get_num(n, "gamma", 1.4);
    nd.Ma = get_num(n, "Ma");
    nd.Re = get_num(n, "Re");
    nd.Pr = get_num(n, "Pr");
    nd.Mm = get_num(n, "Mm");
    nd.Rm = get_num(n, "Rm");
    cfg.nondim = nd;
    cfg.gas = nd.to_gas();
  }

  if (j.contains("glm")) {
    const json& g = j["glm"];
    check_keys(g, "glm", {"c_h", "alpha", "alpha_T", "T0", "rho0"});
    cfg.glm.c_h = get_num(g, "c_h", 0.0);
    cfg.glm.alpha = get_num(g, "alpha", 0.0);
    cfg.glm.alpha_T = get_num(g, "alpha_T", 0.0);
    cfg.glm.T0 = get_num(g, "T0", 1.0);
    cfg.glm.rho0 = get_num(g, "rho0", 1.0);
  }

  if (j.contains("dissipation")) {
    const json& d = j["dissipation"];
    check_keys(d, "dissipation", {"llf", "beta_visc"});
    cfg.diss.llf_enabled = d.value("llf", false);
    cfg.diss.beta_visc = get_num(d, "beta_visc", 0.0);
  }

  if (j.contains("boundary")) {
    const json& b = j["boundary"];
    check_keys(b, "boundary", {"left", "right"});
    if (b.contains("left")) cfg.left_bc = parse_bc(b["left"], cfg.left_g_heat);
    if (b.contains("right")) cfg.right_bc = parse_bc(b["right"], cfg.right_g_heat);
  }

  if (j.contains("initial")) {
    const json& ic = j["initial"];
    const std::string kind = ic.value("kind", "uniform");
    if (kind == "uniform") {
      check_keys(ic, "initial", {"kind", "state"});
      UniformInitial u;
      if (ic.contains("state")) u.state = prim_from_json(ic["state"]);
      cfg.initial = u;
    } else if (kind == "perturbed") {
      check_keys(ic, "initial", {"kind", "state", "amplitude"});
      PerturbedInitial p;
      if (ic.contains("state")) p.base = prim_from_json(ic["state"]);
      p.amplitude = get_num(ic, "amplitude", 0.05);
      cfg.initial = p;
    } else if (kind == "manufactured") {
      check_keys(ic, "initial", {"kind", "name", "t0"});
      ManufacturedInitial m;
      m.name = ic.value("name", "mms_walls");
      m.t0 = get_num(ic, "t0", 0.0);
      find_manufactured(m.name);  // validates the name
      cfg.initial = m;
    } else {
      throw ConfigError("initial kind must be uniform|perturbed|manufactured");
    }
  }

  if (j.contains("forcing")) {
    const json& f = j["forcing"];
    check_keys(f, "forcing", {"manufactured"});
    cfg.forcing_mms = f.value("manufactured", "");
    find_manufactured(*cfg.forcing_mms);
  }

  if (j.contains("integrator")) {
    const json& it = j["integrator"];
    check_keys(it, "integrator",
               {"method", "abs_tol", "rel_tol", "dt_init", "dt_max", "t_end", "safety"});
    const std::string method = it.value("method", "dp54");
    if (method == "rk4")
      cfg.integrator.method = TimeIntegrator::Method::rk4;
    else if (method == "dp54")
      cfg.integrator.method = TimeIntegrator::Method::dp54;
    else
      throw ConfigError("integrator method must be rk4|dp54");
    cfg.integrator.abs_tol = get_num(it, "abs_tol", 1e-8);
    cfg.integrator.rel_tol = get_num(it, "rel_tol", 1e-8);
    cfg.integrator.dt_init = get_num(it, "dt_init", 1e-3);
    cfg.integrator.dt_max = get_num(it, "dt_max", cfg.integrator.dt_max);
    cfg.integrator.safety = get_num(it, "safety", 0.9);
    cfg.t_end = get_num(it, "t_end", 1.0);
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"dir", "prefix"});
    cfg.out_dir = o.value("dir", ".");
    cfg.prefix = o.value("prefix", "run");
  }

  if (j.contains("simd")) {
    const std::string s = j["simd"].get<std::string>();
    if (s == "scalar")
      cfg.simd = kernels::Backend::scalar;
    else if (s == "avx2")
      cfg.simd = kernels::Backend::avx2;
    else if (s != "auto")
      throw ConfigError("simd must be auto|scalar|avx2");
  }

  cfg.validate();
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["schema_version"] = cfg.schema_version;
  if (cfg.element_boundaries) {
    j["domain"] = {{"element_boundaries", *cfg.element_boundaries}, {"degree", cfg.degree}};
  } else {
    j["domain"] = {{"x0", cfg.x0}, {"x1", cfg.x1}, {"elements", cfg.elements},
                   {"degree", cfg.degree}};
  }
  if (cfg.nondim) {
    const NondimNumbers& n = *cfg.nondim;
    j["nondim"] = {{"gamma", n.gamma}, {"Ma", n.Ma}, {"Re", n.Re},
                   {"Pr", n.Pr},       {"Mm", n.Mm}, {"Rm", n.Rm}};
  } else {
    j["gas"] = {{"gamma", cfg.gas.gamma}, {"R", cfg.gas.R},
                {"mu0", cfg.gas.mu0},     {"mu_ns", cfg.gas.mu_ns},
                {"mu_r", cfg.gas.mu_r},   {"kappa", cfg.gas.kappa},
                {"T_ref", cfg.gas.T_ref}, {"rho_ref", cfg.gas.rho_ref}};
  }
  j["glm"] = {{"c_h", cfg.glm.c_h}, {"alpha", cfg.glm.alpha}, {"alpha_T", cfg.glm.alpha_T},
              {"T0", cfg.glm.T0},   {"rho0", cfg.glm.rho0}};
  j["dissipation"] = {{"llf", cfg.diss.llf_enabled}, {"beta_visc", cfg.diss.beta_visc}};
  j["boundary"] = {{"left", bc_to_json(cfg.left_bc, cfg.left_g_heat)},
                   {"right", bc_to_json(cfg.right_bc, cfg.right_g_heat)}};
  if (const auto* u = std::get_if<UniformInitial>(&cfg.initial)) {
    j["initial"] = {{"kind", "uniform"}, {"state", prim_to_json(u->state)}};
  } else if (const auto* p = std::get_if<PerturbedInitial>(&cfg.initial)) {
    j["initial"] = {{"kind", "perturbed"}, {"state", prim_to_json(p->base)},
                    {"amplitude", p->amplitude}};
  } else {
    const auto& m = std::get<ManufacturedInitial>(cfg.initial);
    j["initial"] = {{"kind", "manufactured"}, {"name", m.name}, {"t0", m.t0}};
  }
  if (cfg.forcing_mms) j["forcing"] = {{"manufactured", *cfg.forcing_mms}};
  j["integrator"] = {
      {"method", cfg.integrator.method == TimeIntegrator::Method::rk4 ? "rk4" : "dp54"},
      {"abs_tol", cfg.integrator.abs_tol},
      {"rel_tol", cfg.integrator.rel_tol},
      {"dt_init", cfg.integrator.dt_init},
      {"dt_max", cfg.integrator.dt_max},
      {"safety", cfg.integrator.safety},
      {"t_end", cfg.t_end}};
  j["output"] = {{"dir", cfg.out_dir}, {"prefix", cfg.prefix}};
  if (cfg.simd)
    j["simd"] = *cfg.simd == kernels::Backend::scalar ? "scalar" : "avx2";
  return j;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

SemiDiscreteSystem make_system(const RunConfig& cfg) {
  kernels::set_backend_override(cfg.simd);
  SemiDiscreteSystem sys;
  sys.mesh = cfg.element_boundaries
                 ? Mesh1D::from_boundaries(*cfg.element_boundaries, cfg.degree)
                 : Mesh1D::uniform(cfg.x0, cfg.x1, cfg.elements, cfg.degree);
  sys.gas = cfg.gas;
  sys.glm = cfg.glm;
  sys.diss = cfg.diss;
  sys.left_bc = cfg.left_bc;
  sys.right_bc = cfg.right_bc;
  if (cfg.forcing_mms) {
    const ManufacturedSolution& mms = find_manufactured(*cfg.forcing_mms);
    const GasParams gas = cfg.gas;
    const GlmParams glm = cfg.glm;
    sys.forcing = [&mms, gas, glm](double x, double t) { return mms.forcing(x, t, gas, glm); };
  }
  sys.validate();
  return sys;
}

Field initial_field(const RunConfig& cfg, const SemiDiscreteSystem& sys) {
  if (const auto* u = std::get_if<UniformInitial>(&cfg.initial))
    return sys.constant_field(prim_to_cons(u->state, sys.gas));
  if (const auto* p = std::get_if<PerturbedInitial>(&cfg.initial)) {
    const double a = p->amplitude;
    const PrimState base = p->base;
    const double x0 = cfg.x0, len = cfg.x1 - cfg.x0;
    return sys.from_primitive([&](double x) {
      const double xi = (x - x0) / len;
      PrimState v = base;
      v.rho *= 1.0 + a * std::sin(2.0 * M_PI * xi);
      v.T *= 1.0 + a * std::cos(M_PI * xi) * 0.8;
      v.v[0] += a * std::sin(M_PI * xi);
      v.v[1] += a * 0.5 * std::cos(2.0 * M_PI * xi);
      v.v[2] += a * 0.25 * std::sin(2.0 * M_PI * xi);
      v.B[0] += a * 0.5 * std::sin(M_PI * xi);
      v.B[1] += a * std::cos(M_PI * xi);
      v.B[2] += a * 0.5 * std::sin(2.0 * M_PI * xi);
      v.psi += a * 0.5 * std::sin(2.0 * M_PI * xi);
      return v;
    });
  }
  const auto& m = std::get<ManufacturedInitial>(cfg.initial);
  const ManufacturedSolution& mms = find_manufactured(m.name);
  return sys.from_primitive([&](double x) { return mms.prim(x, m.t0); });
}

std::string resolve_output_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("ESMHD_OUTPUT_DIR"); env && *env) return env;
  return cfg.out_dir;
}

}  // namespace esmhd
