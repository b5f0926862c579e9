#pragma once

#include <functional>
#include <limits>

#include "esmhd/solver.hpp"

namespace esmhd {

// Explicit time integration: classic fixed-step RK4 (bit-reproducible
// audits) or the embedded Dormand-Prince 5(4) pair with a PI step
// controller (safety 0.9, exponents 0.7/5 and -0.4/5).
struct TimeIntegrator {
  enum class Method { rk4, dp54 };
  Method method = Method::dp54;
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  double safety = 0.9;
  double dt_init = 1e-3;
  double dt_max = std::numeric_limits<double>::infinity();
  double dt_min = 1e-14;
  double fac_min = 0.2;
  double fac_max = 5.0;
  // PI controller exponents (error and history), embedded order 5
  double pi_err_exp = 0.7 / 5.0;
  double pi_hist_exp = 0.4 / 5.0;

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0)) throw ConfigError("tolerances must be > 0");
    if (!(dt_init > 0)) throw ConfigError("dt_init must be > 0");
  }
};

using RhsFn = std::function<void(const Field&, double, Field&)>;
using StepObserver = std::function<void(double t, double dt, const Field& u)>;

struct AdvanceResult {
  Field u;
  double t = 0;
  long accepted = 0;
  long rejected = 0;
};

AdvanceResult advance(const RhsFn& rhs, Field u0, double t0, double t_end,
                      const TimeIntegrator& ti, const StepObserver& on_accept = {});

AdvanceResult advance(const SemiDiscreteSystem& sys, Field u0, double t0, double t_end,
                      const TimeIntegrator& ti, const StepObserver& on_accept = {});

}  // namespace esmhd
