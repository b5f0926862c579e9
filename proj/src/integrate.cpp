#include "esmhd/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace esmhd {

namespace {

// Re-throws solver errors (positivity failures carry the node location)
// with the integration time attached.
[[noreturn]] void rethrow_with_time(const Error& err, double t) {
  std::ostringstream os;
  os << err.what() << " (while integrating at t = " << t << ")";
  throw Error(os.str());
}

void axpy(Field& y, double a, const Field& x) {
  for (size_t i = 0; i < y.size(); ++i)
    for (int c = 0; c < 9; ++c) y[i][c] += a * x[i][c];
}

Field combine(const Field& u, double dt, std::initializer_list<std::pair<double, const Field*>> ks) {
  Field y = u;
  for (const auto& [b, k] : ks) axpy(y, dt * b, *k);
  return y;
}

double error_norm(const Field& err, const Field& u0, const Field& u1, double atol, double rtol) {
  double acc = 0;
  size_t n = 0;
  for (size_t i = 0; i < err.size(); ++i)
    for (int c = 0; c < 9; ++c) {
      const double sc = atol + rtol * std::max(std::abs(u0[i][c]), std::abs(u1[i][c]));
      const double e = err[i][c] / sc;
      acc += e * e;
      ++n;
    }
  return std::sqrt(acc / static_cast<double>(n));
}

AdvanceResult advance_rk4(const RhsFn& rhs, Field u, double t0, double t_end,
                          const TimeIntegrator& ti, const StepObserver& on_accept) {
  AdvanceResult res;
  double t = t0;
  Field k1, k2, k3, k4;
  while (t < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
    const double dt = std::min(ti.dt_init, t_end - t);
    try {
      rhs(u, t, k1);
      rhs(combine(u, dt, {{0.5, &k1}}), t + 0.5 * dt, k2);
      rhs(combine(u, dt, {{0.5, &k2}}), t + 0.5 * dt, k3);
      rhs(combine(u, dt, {{1.0, &k3}}), t + dt, k4);
    } catch (const Error& err) {
      rethrow_with_time(err, t);
    }
    axpy(u, dt / 6.0, k1);
    axpy(u, dt / 3.0, k2);
    axpy(u, dt / 3.0, k3);
    axpy(u, dt / 6.0, k4);
    t += dt;
    ++res.accepted;
    if (on_accept) on_accept(t, dt, u);
  }
  res.u = std::move(u);
  res.t = t;
  return res;
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// y5 - y4 coefficients
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

AdvanceResult advance_dp54(const RhsFn& rhs, Field u, double t0, double t_end,
                           const TimeIntegrator& ti, const StepObserver& on_accept) {
  AdvanceResult res;
  double t = t0;
  double dt = std::min(ti.dt_init, ti.dt_max);
  double err_prev = 1.0;
  Field k1, k2, k3, k4, k5, k6, k7;
  rhs(u, t0, k1);
  while (t < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
    dt = std::min(dt, t_end - t);
    if (dt < ti.dt_min) throw StepSizeUnderflow(t, dt);

    Field u_new;
    try {
      rhs(combine(u, dt, {{a21, &k1}}), t + c2 * dt, k2);
      rhs(combine(u, dt, {{a31, &k1}, {a32, &k2}}), t + c3 * dt, k3);
      rhs(combine(u, dt, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), t + c4 * dt, k4);
      rhs(combine(u, dt, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), t + c5 * dt, k5);
      rhs(combine(u, dt, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), t + dt,
          k6);
      u_new = combine(u, dt, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      rhs(u_new, t + dt, k7);  // FSAL
    } catch (const Error& err) {
      rethrow_with_time(err, t);
    }
    Field err =
        combine(Field(u.size(), State9{}), dt,
                {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});
    const double err_norm_v =
        std::max(error_norm(err, u, u_new, ti.abs_tol, ti.rel_tol), 1e-12);

    if (err_norm_v <= 1.0) {
      t += dt;
      u = std::move(u_new);
      k1 = k7;
      ++res.accepted;
      if (on_accept) on_accept(t, dt, u);
      const double fac = ti.safety * std::pow(err_norm_v, -ti.pi_err_exp) *
                         std::pow(err_prev, ti.pi_hist_exp);
      dt = std::min(dt * std::clamp(fac, ti.fac_min, ti.fac_max), ti.dt_max);
      err_prev = err_norm_v;
    } else {
      ++res.rejected;
      const double fac = ti.safety * std::pow(err_norm_v, -1.0 / 5.0);
      dt *= std::clamp(fac, ti.fac_min, 0.9);
    }
  }
  res.u = std::move(u);
  res.t = t;
  return res;
}

}  // namespace

AdvanceResult advance(const RhsFn& rhs, Field u0, double t0, double t_end,
                      const TimeIntegrator& ti, const StepObserver& on_accept) {
  ti.validate();
  if (!(t_end >= t0)) throw ConfigError("t_end must be >= t0");
  if (ti.method == TimeIntegrator::Method::rk4)
    return advance_rk4(rhs, std::move(u0), t0, t_end, ti, on_accept);
  return advance_dp54(rhs, std::move(u0), t0, t_end, ti, on_accept);
}

AdvanceResult advance(const SemiDiscreteSystem& sys, Field u0, double t0, double t_end,
                      const TimeIntegrator& ti, const StepObserver& on_accept) {
  sys.validate();
  return advance([&sys](const Field& u, double t, Field& dudt) { sys.rhs(u, t, dudt); },
                 std::move(u0), t0, t_end, ti, on_accept);
}

}  // namespace esmhd
