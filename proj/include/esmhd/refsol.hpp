#pragma once

#include <vector>

#include "esmhd/types.hpp"

// Analytical reference solutions used as validation oracles: the MHD pipe
// flow series, the field of an infinite wire with rectangular cross section,
// and the field of a circular current loop, together with the special
// functions they need.

namespace esmhd::refsol {

// Modified Bessel function of the first kind, n <= 64, 0 <= x <= 100,
// computed by Miller's backward recurrence with series normalization.
double modified_bessel_i(int n, double x);
// e^-x I_n(x); safe against overflow for large arguments.
double modified_bessel_i_scaled(int n, double x);
// I_n'(x) = (I_{n-1}(x) + I_{n+1}(x))/2 with I_{-1} = I_1.
double modified_bessel_i_deriv(int n, double x);

struct EllipticKE {
  double K, E;
};
// Complete elliptic integrals by the arithmetic-geometric mean, 0 <= k < 1.
EllipticKE elliptic_ke(double k);

// Laminar MHD pipe flow under a transverse field (series solution).
struct PipeParams {
  double Ha = 5.0;
  double c = 0.0;           // wall conductance parameter
  bool c_infinite = false;  // perfectly conducting wall
  int N0 = 30, N1 = 30, S0 = 10, S1 = 10;

  double k() const { return 0.5 * Ha; }
  void validate() const;
};

struct PipeValue {
  double u, b;
};

class PipeSeries {
 public:
  explicit PipeSeries(const PipeParams& params);

  // raw series values (tilde quantities)
  PipeValue eval(double r, double theta) const;
  // normalized so u(0,0) = 1 and b(1/2, pi) = 1
  PipeValue eval_normalized(double r, double theta) const;
  // radial derivative of the raw b series (for the wall-condition checks)
  double db_dr(double r, double theta) const;
  double db_dr_normalized(double r, double theta) const;

  const std::vector<double>& coefficients_A() const { return A_; }
  const std::vector<double>& coefficients_M() const { return M_; }
  double u_star() const { return u_star_; }  // u(0,0) of the raw series
  double b_star() const { return b_star_; }  // b(1/2, pi) of the raw series
  const PipeParams& params() const { return params_; }

 private:
  PipeParams params_;
  std::vector<double> A_;  // 0..S1
  std::vector<double> M_;  // 0..N0
  double u_star_ = 1, b_star_ = 1;
};

// Field of a uniform current along y through the rectangular cross section
// (x, z) in [-w/2, w/2] x [-h, 0].
struct WireParams {
  double w = 1.0;
  double h = 1.0;
  double i = 1.0;  // current density
  double mu0 = 1.0;

  double total_current() const { return i * w * h; }
  void validate() const;
};

Vec3 wire_field(double x, double z, const WireParams& params);

// Field of a circular current loop of radius a at z = 0 in cylindrical
// coordinates; throws OnFilament at the loop itself.
struct LoopParams {
  double a = 1.0;
  double I = 1.0;
  double mu0 = 1.0;

  void validate() const;
};

struct LoopField {
  double B_r, B_z;
};

LoopField loop_field(double r, double z, const LoopParams& params);

}  // namespace esmhd::refsol
