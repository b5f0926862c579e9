#include "esmhd/refsol.hpp"

#include <cmath>

namespace esmhd::refsol {

namespace {

// public cap on the order; the pipe series may internally go slightly
// higher (N0 + 2 S0 + 1) when its truncation limits are raised
constexpr int kMaxOrder = 64;
constexpr int kMaxOrderInternal = 128;
constexpr double kMaxArg = 100.0;

// All scaled orders 0..n_max by Miller's backward recurrence, normalized
// with e^x = I_0 + 2 sum I_k.
std::vector<double> bessel_i_scaled_all(int n_max, double x) {
  if (n_max < 0 || n_max > kMaxOrderInternal) throw DomainError("bessel order out of range");
  if (x < 0.0 || x > kMaxArg) throw DomainError("bessel argument out of range");
  std::vector<double> out(n_max + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;  // e^0 I_0(0)
    return out;
  }
  // start well above both the order and the argument so the trial values
  // have fully converged by the time they reach the requested orders
  const int start = n_max + static_cast<int>(std::ceil(x)) + 60;
  double fkp1 = 0.0, fk = 1e-280;
  double sum = 0.0;  // accumulates 2 sum_{k>=1} I_k in trial units
  for (int k = start; k >= 1; --k) {
    const double fkm1 = fkp1 + (2.0 * k / x) * fk;
    fkp1 = fk;
    fk = fkm1;
    if (k - 1 <= n_max) out[k - 1] = fk;
    sum += 2.0 * fkp1;
    if (std::abs(fk) > 1e260) {  // rescale to avoid overflow
      const double scale = 1e-260;
      fk *= scale;
      fkp1 *= scale;
      sum *= scale;
      for (double& v : out) v *= scale;
    }
  }
  sum += fk;  // the k = 0 term
  for (double& v : out) v /= sum;
  return out;
}

}  // namespace

double modified_bessel_i_scaled(int n, double x) {
  if (n > kMaxOrder) throw DomainError("bessel order out of range");
  return bessel_i_scaled_all(n, x)[n];
}

double modified_bessel_i(int n, double x) {
  return modified_bessel_i_scaled(n, x) * std::exp(x);
}

double modified_bessel_i_deriv(int n, double x) {
  if (n > kMaxOrder) throw DomainError("bessel order out of range");
  if (x == 0.0) return n == 1 ? 0.5 : 0.0;
  const int lo = std::abs(n - 1);
  const auto all = bessel_i_scaled_all(n + 1, x);
  return 0.5 * (all[lo] + all[n + 1]) * std::exp(x);
}

EllipticKE elliptic_ke(double k) {
  if (!(k >= 0.0) || k >= 1.0) throw DomainError("elliptic modulus must be in [0, 1)");
  double a = 1.0, b = std::sqrt(1.0 - k * k), c = k;
  double csum = 0.5 * c * c;
  double pow2 = 1.0;
  for (int it = 0; it < 64 && std::abs(c) > 1e-17 * a; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    pow2 *= 2.0;
    csum += 0.5 * pow2 * c * c;
  }
  EllipticKE res;
  res.K = M_PI / (2.0 * a);
  res.E = res.K * (1.0 - csum);
  return res;
}

void PipeParams::validate() const {
  if (!(Ha > 0.0)) throw ConfigError("Ha must be > 0");
  if (!c_infinite && c < 0.0) throw ConfigError("c must be >= 0");
  if (S1 > S0) throw ConfigError("S1 must be <= S0");
  if (N0 < 0 || N1 < 0 || S0 < 0 || S1 < 0) throw ConfigError("negative truncation limit");
  if (std::max(N0, N1) + 2 * S0 + 2 > kMaxOrderInternal)
    throw ConfigError("truncation limits exceed the supported Bessel order");
}

PipeSeries::PipeSeries(const PipeParams& params) : params_(params) {
  params_.validate();
  const double k = params_.k();
  const int max_order = std::max(params_.N0, params_.N1) + 2 * params_.S0 + 2;
  std::vector<double> I(max_order + 1);
  {
    const auto scaled = bessel_i_scaled_all(max_order, k);
    const double ek = std::exp(k);
    for (int m = 0; m <= max_order; ++m) I[m] = scaled[m] * ek;
  }
  auto In = [&](int m) { return I[std::abs(m)]; };  // I_{-m} = I_m
  auto G = [&](int n, int s) { return In(n + 2 * s + 1) + In(n - 2 * s - 1); };

  // B_ms A_s = C_m, 0 <= s, m <= S1; for a perfectly conducting wall both
  // sides are divided by c, which keeps the system well conditioned.
  const int ns = params_.S1 + 1;
  std::vector<double> B(ns * ns, 0.0), C(ns, 0.0);
  for (int m = 0; m < ns; ++m) {
    for (int s = 0; s < ns; ++s) {
      double acc = 0.0;
      for (int n = 0; n <= params_.N1; ++n) {
        const double eps_n = (n == 0) ? 0.5 : 1.0;
        const double Iprime = 0.5 * (In(n - 1) + In(n + 1));
        const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^(n+1)
        acc += sign * eps_n * Iprime / In(n) * G(n, s) * G(n, m);
      }
      const double delta = (m == s) ? 1.0 : 0.0;
      if (params_.c_infinite)
        B[m * ns + s] = k * acc;  // delta/c -> 0
      else
        B[m * ns + s] = delta + params_.c * k * acc;
    }
    if (m == 0) C[m] = params_.c_infinite ? -0.5 : -(1.0 + params_.c) / 2.0;
  }

  // dense solve with partial pivoting; the system is at most 15x15
  A_.assign(ns, 0.0);
  {
    std::vector<double> M(B);
    std::vector<double> rhs(C);
    for (int col = 0; col < ns; ++col) {
      int best = col;
      for (int r = col + 1; r < ns; ++r)
        if (std::abs(M[r * ns + col]) > std::abs(M[best * ns + col])) best = r;
      if (std::abs(M[best * ns + col]) < 1e-300) throw SingularSystem("pipe coefficient system");
      if (best != col) {
        for (int j = 0; j < ns; ++j) std::swap(M[col * ns + j], M[best * ns + j]);
        std::swap(rhs[col], rhs[best]);
      }
      for (int r = col + 1; r < ns; ++r) {
        const double f = M[r * ns + col] / M[col * ns + col];
        for (int j = col; j < ns; ++j) M[r * ns + j] -= f * M[col * ns + j];
        rhs[r] -= f * rhs[col];
      }
    }
    for (int r = ns - 1; r >= 0; --r) {
      double acc = rhs[r];
      for (int j = r + 1; j < ns; ++j) acc -= M[r * ns + j] * A_[j];
      A_[r] = acc / M[r * ns + r];
    }
  }

  // M_n sums to S0 with A_s = 0 for s > S1
  M_.assign(params_.N0 + 1, 0.0);
  for (int n = 0; n <= params_.N0; ++n) {
    double acc = 0.0;
    for (int s = 0; s <= std::min(params_.S0, params_.S1); ++s) acc += A_[s] * G(n, s);
    M_[n] = acc / In(n);
  }

  u_star_ = eval(0.0, 0.0).u;
  b_star_ = eval(0.5, M_PI).b;
}

PipeValue PipeSeries::eval(double r, double theta) const {
  if (r < 0.0 || r > 1.0 + 1e-12) throw DomainError("pipe radius outside the unit disk");
  const double k = params_.k();
  const double kr = k * r;
  const auto scaled = bessel_i_scaled_all(params_.N0, kr);
  const double ct = std::cos(theta);
  // exp-weighted products from scaled Bessel values, bounded by e^(2 k r)
  const double ep = std::exp(kr * (1.0 + ct));
  const double em = std::exp(kr * (1.0 - ct));
  PipeValue v{0.0, 0.0};
  for (int n = 0; n <= params_.N0; ++n) {
    const double eps_n = (n == 0) ? 0.5 : 1.0;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
    const double plus = 0.5 * (sign * ep + em) * scaled[n];
    const double minus = 0.5 * (sign * ep - em) * scaled[n];
    const double cnt = std::cos(n * theta);
    v.u -= eps_n / k * M_[n] * plus * cnt;
    v.b += eps_n / k * M_[n] * minus * cnt;
  }
  v.b -= r / (2.0 * k) * ct;
  return v;
}

double PipeSeries::db_dr(double r, double theta) const {
  if (r < 0.0 || r > 1.0 + 1e-12) throw DomainError("pipe radius outside the unit disk");
  const double k = params_.k();
  const double kr = k * r;
  const auto scaled = bessel_i_scaled_all(params_.N0 + 1, kr);
  const double ct = std::cos(theta);
  const double ep = std::exp(kr * (1.0 + ct));
  const double em = std::exp(kr * (1.0 - ct));
  double d = 0.0;
  for (int n = 0; n <= params_.N0; ++n) {
    const double eps_n = (n == 0) ? 0.5 : 1.0;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double plus = 0.5 * (sign * ep + em) * scaled[n];
    const double iprime = 0.5 * (scaled[std::abs(n - 1)] + scaled[n + 1]);
    const double dminus = 0.5 * (sign * ep - em) * iprime;
    const double cnt = std::cos(n * theta);
    d += eps_n / k * M_[n] * (k * ct * plus + k * dminus) * cnt;
  }
  d -= ct / (2.0 * k);
  return d;
}

PipeValue PipeSeries::eval_normalized(double r, double theta) const {
  const PipeValue v = eval(r, theta);
  return {v.u / u_star_, v.b / b_star_};
}

double PipeSeries::db_dr_normalized(double r, double theta) const {
  return db_dr(r, theta) / b_star_;
}

void WireParams::validate() const {
  if (!(w > 0.0) || !(h > 0.0)) throw ConfigError("wire cross section must be positive");
}

namespace {

// a ln(1 + q) and a atan(b/a) with the a -> 0 limits taken
double xlog1p(double a, double q) { return a == 0.0 ? 0.0 : a * std::log1p(q); }
double xatan(double a, double b) { return a == 0.0 ? 0.0 : a * std::atan(b / a); }

double wire_bx(double p, double z, double h) {
  const double r2 = p * p + z * z;
  const double t1 = (p == 0.0 || r2 == 0.0) ? 0.0 : p * std::log1p((h * h + 2.0 * z * h) / r2);
  return t1 + 2.0 * xatan(z + h, p) - 2.0 * xatan(z, p);
}

double wire_bz(double p, double z, double h) {
  const double t1 = xlog1p(z, z == 0.0 ? 0.0 : p * p / (z * z));
  const double t2 = xlog1p(z + h, z + h == 0.0 ? 0.0 : p * p / ((z + h) * (z + h)));
  const double t3 = (p == 0.0) ? 0.0 : 2.0 * p * (std::atan((z + h) / p) - std::atan(z / p));
  return t1 - t2 - t3;
}

}  // namespace

Vec3 wire_field(double x, double z, const WireParams& params) {
  params.validate();
  const double f = params.mu0 * params.i / (4.0 * M_PI);
  const double pl = x + 0.5 * params.w;
  const double pr = x - 0.5 * params.w;
  Vec3 B{0, 0, 0};
  B[0] = f * (wire_bx(pl, z, params.h) - wire_bx(pr, z, params.h));
  B[2] = f * (wire_bz(pl, z, params.h) - wire_bz(pr, z, params.h));
  return B;
}

void LoopParams::validate() const {
  if (!(a > 0.0)) throw ConfigError("loop radius must be positive");
}

LoopField loop_field(double r, double z, const LoopParams& params) {
  params.validate();
  if (r < 0.0) throw DomainError("loop field expects r >= 0");
  const double alpha = r / params.a;
  const double beta = z / params.a;
  const double Q = (1.0 + alpha) * (1.0 + alpha) + beta * beta;
  const double denom = Q - 4.0 * alpha;  // (1 - alpha)^2 + beta^2
  if (denom <= 0.0) throw OnFilament();
  const double B0 = params.I * params.mu0 / (2.0 * params.a);
  const EllipticKE ke = elliptic_ke(std::sqrt(4.0 * alpha / Q));
  LoopField f;
  f.B_z = B0 / (M_PI * std::sqrt(Q)) *
          (ke.E * (1.0 - alpha * alpha - beta * beta) / denom + ke.K);
  if (r == 0.0) {
    f.B_r = 0.0;  // analytic limit on the axis
  } else {
    const double gamma = z / r;
    f.B_r = B0 * gamma / (M_PI * std::sqrt(Q)) *
            (ke.E * (1.0 + alpha * alpha + beta * beta) / denom - ke.K);
  }
  return f;
}

}  // namespace esmhd::refsol
