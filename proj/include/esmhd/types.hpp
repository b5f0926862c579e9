#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace esmhd {

using Vec3 = std::array<double, 3>;
using State9 = std::array<double, 9>;

// Gradient of the nine primitive variables with respect to the three spatial
// directions: theta[d][q] = d(prim_q)/dx_d.  The 1D solver only populates and
// consumes d = 0; the boundary-condition machinery is written for all three.
using Grad39 = std::array<State9, 3>;

// State vector component indices (conservative and primitive share layout).
enum StateIndex : int {
  IRHO = 0,
  IMX = 1,  // momentum (cons) / velocity (prim)
  IMY = 2,
  IMZ = 3,
  IE = 4,  // total energy (cons) / temperature (prim)
  IBX = 5,
  IBY = 6,
  IBZ = 7,
  IPSI = 8
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline State9 operator+(const State9& a, const State9& b) {
  State9 r;
  for (int i = 0; i < 9; ++i) r[i] = a[i] + b[i];
  return r;
}
inline State9 operator-(const State9& a, const State9& b) {
  State9 r;
  for (int i = 0; i < 9; ++i) r[i] = a[i] - b[i];
  return r;
}
inline State9 operator*(double s, const State9& a) {
  State9 r;
  for (int i = 0; i < 9; ++i) r[i] = s * a[i];
  return r;
}
inline State9& operator+=(State9& a, const State9& b) {
  for (int i = 0; i < 9; ++i) a[i] += b[i];
  return a;
}
inline double dot(const State9& a, const State9& b) {
  double s = 0;
  for (int i = 0; i < 9; ++i) s += a[i] * b[i];
  return s;
}

// Dense 9x9 matrix, row major.
struct Mat9 {
  std::array<double, 81> a{};

  double& operator()(int i, int j) { return a[9 * i + j]; }
  double operator()(int i, int j) const { return a[9 * i + j]; }

  State9 operator*(const State9& x) const {
    State9 y{};
    for (int i = 0; i < 9; ++i) {
      double s = 0;
      for (int j = 0; j < 9; ++j) s += a[9 * i + j] * x[j];
      y[i] = s;
    }
    return y;
  }

  Mat9 operator*(const Mat9& rhs) const {
    Mat9 m;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        double s = 0;
        for (int k = 0; k < 9; ++k) s += a[9 * i + k] * rhs.a[9 * k + j];
        m.a[9 * i + j] = s;
      }
    return m;
  }

  Mat9 transposed() const {
    Mat9 m;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) m.a[9 * i + j] = a[9 * j + i];
    return m;
  }
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPositiveDensity : Error {
  explicit NonPositiveDensity(double rho)
      : Error("non-positive density: " + std::to_string(rho)) {}
};
struct NonPositivePressure : Error {
  explicit NonPositivePressure(double p)
      : Error("non-positive pressure: " + std::to_string(p)) {}
};
struct NonPositiveTemperature : Error {
  explicit NonPositiveTemperature(double T)
      : Error("non-positive temperature: " + std::to_string(T)) {}
};
struct NonPositiveInput : Error {
  explicit NonPositiveInput(const std::string& what) : Error("non-positive input: " + what) {}
};
struct UnsupportedDegree : Error {
  explicit UnsupportedDegree(int p) : Error("unsupported polynomial degree: " + std::to_string(p)) {}
};
struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& what) : Error("shape mismatch: " + what) {}
};
struct WrongWallKind : Error {
  explicit WrongWallKind(const std::string& what) : Error("wrong wall kind: " + what) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("domain error: " + what) {}
};
struct SingularSystem : Error {
  explicit SingularSystem(const std::string& what) : Error("singular system: " + what) {}
};
struct OnFilament : Error {
  OnFilament() : Error("field evaluated on the current loop filament") {}
};
struct StepSizeUnderflow : Error {
  explicit StepSizeUnderflow(double t, double dt)
      : Error("time step underflow at t = " + std::to_string(t) + ", dt = " + std::to_string(dt)) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

}  // namespace esmhd
