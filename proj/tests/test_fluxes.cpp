#include <doctest.h>

#include <cmath>

#include "esmhd/fluxes.hpp"
#include "esmhd/wall_bc.hpp"
#include "oracles.hpp"

using namespace esmhd;
namespace tst = esmhd::testing;

TEST_SUITE_BEGIN("fluxes");

TEST_CASE("advective flux pointwise values") {
  GasParams gas;
  GlmParams glm;

  SUBCASE("rest state") {
    PrimState v{1.0, {0, 0, 0}, 1.0, {0, 0, 0}, 0.0};
    const double p = pressure(v, gas);
    const State9 f = advective_flux_x(v, gas, glm);
    for (int i = 0; i < 9; ++i) CHECK(f[i] == doctest::Approx(i == IMX ? p : 0.0).epsilon(1e-15));
  }

  SUBCASE("transverse field") {
    PrimState v{1.0, {0, 0, 0}, 1.0, {0, 1, 0}, 0.0};
    const double p = pressure(v, gas);
    const State9 f = advective_flux_x(v, gas, glm);
    CHECK(f[IMX] == doctest::Approx(p + 0.5).epsilon(1e-15));
    CHECK(f[IBY] == doctest::Approx(0.0));
  }

  SUBCASE("glm column") {
    glm.c_h = 2.0;
    PrimState v{1.0, {0, 0, 0}, 1.0, {1, 0, 0}, 0.5};
    const State9 f = advective_flux_x(v, gas, glm);
    CHECK(f[IBX] == doctest::Approx(1.0).epsilon(1e-15));   // c_h psi
    CHECK(f[IPSI] == doctest::Approx(2.0).epsilon(1e-15));  // c_h B1
  }
}

TEST_CASE("powell and glm phi vectors") {
  GasParams gas;

  SUBCASE("no velocity") {
    PrimState v{1.0, {0, 0, 0}, 1.0, {0.3, -0.1, 0.2}, 0.7};
    const State9 phi_m = powell_phi(v, gas);
    CHECK(phi_m[IE] == 0.0);
    CHECK(phi_m[IBX] == 0.0);
    CHECK(phi_m[IBY] == 0.0);
    CHECK(phi_m[IBZ] == 0.0);
    const State9 phi_g = glm_phi(v, gas);
    for (double x : phi_g) CHECK(x == 0.0);
  }

  SUBCASE("no field") {
    PrimState v{1.0, {0.5, -0.2, 0.1}, 1.0, {0, 0, 0}, 0.0};
    const State9 phi_m = powell_phi(v, gas);
    CHECK(phi_m[IBX] == doctest::Approx(0.5));
    CHECK(phi_m[IBY] == doctest::Approx(-0.2));
    CHECK(phi_m[IBZ] == doctest::Approx(0.1));
    for (int i : {IRHO, IMX, IMY, IMZ, IE, IPSI}) CHECK(phi_m[i] == 0.0);
  }

  SUBCASE("glm arithmetic") {
    PrimState v{1.0, {2, 0, 0}, 1.0, {0, 0, 0}, 3.0};
    const State9 phi_g = glm_phi(v, gas);
    CHECK(phi_g[IE] == doctest::Approx(6.0));
    CHECK(phi_g[IPSI] == doctest::Approx(2.0));
  }
}

TEST_CASE("viscous flux pointwise values") {
  GasParams gas;
  gas.mu_ns = 0.7;
  gas.mu_r = 1.0;
  gas.kappa = 1.3;
  PrimState v{1.0, {0.2, -0.4, 0.6}, 1.0, {0.5, 2.0, -0.3}, 0.1};

  SUBCASE("zero gradients") {
    const State9 f = viscous_flux_x(v, State9{}, gas);
    for (double x : f) CHECK(x == 0.0);
  }

  SUBCASE("fourier term") {
    State9 theta{};
    theta[IE] = 1.0;
    const State9 f = viscous_flux_x(v, theta, gas);
    CHECK(f[IE] == doctest::Approx(gas.kappa));
    for (int i : {IRHO, IMX, IMY, IMZ, IBX, IBY, IBZ, IPSI}) CHECK(f[i] == 0.0);
  }

  SUBCASE("resistive terms") {
    gas.mu_ns = 0.0;
    gas.kappa = 0.0;
    State9 theta{};
    theta[IBY] = 1.0;
    const State9 f = viscous_flux_x(v, theta, gas);
    CHECK(f[IBY] == doctest::Approx(1.0));
    CHECK(f[IE] == doctest::Approx(2.0));
  }
}

TEST_CASE("cnu matrix") {
  GasParams gas;
  gas.mu_ns = 0.6;
  gas.mu_r = 0.9;
  gas.kappa = 1.1;
  gas.mu0 = 1.7;
  auto g = tst::rng(505);

  SUBCASE("equivalence with the viscous flux") {
    for (int it = 0; it < 500; ++it) {
      const PrimState v = tst::random_prim(g);
      const State9 theta = tst::random_state9(g);
      const State9 direct = viscous_flux_x(v, theta, gas);
      const State9 ge = dwdv_jacobian(v, gas) * theta;
      const State9 via_c = cnu_matrix(v, gas) * ge;
      for (int i = 0; i < 9; ++i)
        CHECK(std::abs(via_c[i] - direct[i]) <= 1e-11 * std::max(1.0, std::abs(direct[i])));
    }
  }

  SUBCASE("symmetric positive semi-definite") {
    for (int it = 0; it < 50; ++it) {
      const PrimState v = tst::random_prim(g);
      const Mat9 c = cnu_matrix(v, gas);
      CHECK(tst::max_abs_diff(c, c.transposed()) < 1e-12);
      CHECK(tst::symmetric_min_eigenvalue(c) >= -1e-12);
    }
  }

  SUBCASE("vanishing transport") {
    gas.mu_ns = gas.mu_r = gas.kappa = 0.0;
    const Mat9 c = cnu_matrix(tst::random_prim(g), gas);
    for (double x : c.a) CHECK(x == 0.0);
  }
}

TEST_CASE("logarithmic mean") {
  CHECK(logarithmic_mean(1.7, 1.7) == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(logarithmic_mean(1.0, std::exp(1.0)) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(logarithmic_mean(-1.0, 2.0), NonPositiveInput);

  // near-coincident arguments against an extended-precision direct formula
  const double a = 1.0, b = 1.0 + 1e-9;
  const long double ref = (static_cast<long double>(b) - a) /
                          std::log(static_cast<long double>(b) / static_cast<long double>(a));
  CHECK(std::abs(logarithmic_mean(a, b) - static_cast<double>(ref)) <= 1e-13 * std::abs(ref));

  // continuity across the series/direct switch
  for (double d : {0.9e-4, 1.1e-4}) {
    const double m = logarithmic_mean(1.0, 1.0 + 2.0 * d);
    const long double r = (2.0L * d) / std::log(1.0L + 2.0L * d);
    CHECK(std::abs(m - static_cast<double>(r)) <= 1e-13 * r);
  }
}

TEST_CASE("ec two-point flux") {
  GasParams gas;
  gas.gamma = 5.0 / 3.0;
  gas.mu0 = 1.4;
  GlmParams glm;
  glm.c_h = 1.3;
  auto g = tst::rng(606);

  SUBCASE("consistency") {
    for (int it = 0; it < 100; ++it) {
      const PrimState v = tst::random_prim(g);
      const State9 fe = ec_two_point_flux(v, v, gas, glm);
      const State9 fa = advective_flux_x(v, gas, glm);
      for (int i = 0; i < 9; ++i)
        CHECK(std::abs(fe[i] - fa[i]) <= 1e-13 * std::max(1.0, std::abs(fa[i])));
    }
  }

  SUBCASE("symmetry") {
    for (int it = 0; it < 1000; ++it) {
      const PrimState a = tst::random_prim(g), b = tst::random_prim(g);
      const State9 fab = ec_two_point_flux(a, b, gas, glm);
      const State9 fba = ec_two_point_flux(b, a, gas, glm);
      for (int i = 0; i < 9; ++i) CHECK(std::abs(fab[i] - fba[i]) <= 1e-14 * std::max(1.0, std::abs(fab[i])));
    }
  }
}

TEST_CASE("nonsym flux and the generalized Tadmor condition") {
  GasParams gas;
  gas.gamma = 1.4;
  gas.R = 0.9;
  gas.mu0 = 1.6;
  GlmParams glm;
  glm.c_h = 0.8;
  auto g = tst::rng(707);

  SUBCASE("reduces to EC flux") {
    for (int it = 0; it < 100; ++it) {
      PrimState a = tst::random_prim(g), b = tst::random_prim(g);
      b.B[0] = 0.0;
      b.psi = 0.0;
      const State9 fs = nonsym_flux(a, b, gas, glm);
      const State9 fe = ec_two_point_flux(a, b, gas, glm);
      for (int i = 0; i < 9; ++i) CHECK(fs[i] == doctest::Approx(fe[i]).epsilon(1e-14));
    }
  }

  SUBCASE("consistency value") {
    for (int it = 0; it < 100; ++it) {
      const PrimState v = tst::random_prim(g);
      const State9 fs = nonsym_flux(v, v, gas, glm);
      const State9 expected = advective_flux_x(v, gas, glm) +
                              0.5 * v.B[0] * powell_phi(v, gas) + 0.5 * v.psi * glm_phi(v, gas);
      for (int i = 0; i < 9; ++i)
        CHECK(std::abs(fs[i] - expected[i]) <= 1e-13 * std::max(1.0, std::abs(expected[i])));
    }
  }

  SUBCASE("tadmor identity, 1e4 pairs") {
    double worst = 0;
    for (int it = 0; it < 10000; ++it) {
      const PrimState a = tst::random_prim(g), b = tst::random_prim(g);
      const State9 wa = entropy_vars(a, gas).w, wb = entropy_vars(b, gas).w;
      const double lhs = dot(wa, nonsym_flux(a, b, gas, glm)) - dot(wb, nonsym_flux(b, a, gas, glm));
      const double rhs = entropy_potential(a, gas, glm) - entropy_potential(b, gas, glm);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("entropy potential") {
  GasParams gas;
  GlmParams glm;
  glm.c_h = 1.1;

  SUBCASE("rest state without field") {
    PrimState v{1.4, {0, 0, 0}, 0.8, {0, 0, 0}, 0.0};
    CHECK(entropy_potential(v, gas, glm) == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("psi scaling at zero axial velocity") {
    PrimState v{1.2, {0, 0.5, -0.3}, 1.1, {0, 0, 0}, 0.4};
    const double a = entropy_potential(v, gas, glm);
    v.psi = 0.8;
    const double b = entropy_potential(v, gas, glm);
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
  }
}

TEST_CASE("entropy jacobian H") {
  GasParams gas;
  gas.gamma = 1.4;
  gas.R = 1.2;
  gas.mu0 = 1.5;
  auto g = tst::rng(808);

  SUBCASE("jump identity for the exact components") {
    for (int it = 0; it < 500; ++it) {
      const PrimState a = tst::random_prim(g), b = tst::random_prim(g);
      const Mat9 H = h_matrix(a, b, gas);
      CHECK(tst::max_abs_diff(H, H.transposed()) < 1e-12);
      const State9 jw = entropy_vars(b, gas).w - entropy_vars(a, gas).w;
      const State9 ju = prim_to_cons(b, gas).as_array() - prim_to_cons(a, gas).as_array();
      const State9 hjw = H * jw;
      for (int i : {IRHO, IMX, IMY, IMZ, IBX, IBY, IBZ, IPSI})
        CHECK(std::abs(hjw[i] - ju[i]) <= 1e-11 * std::max(1.0, std::abs(ju[i])));
    }
  }

  SUBCASE("energy component is first order in the jump") {
    const PrimState a = tst::random_prim(g);
    State9 dir = tst::random_state9(g);
    double dev_prev = -1.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      PrimState b = a;
      b.rho += eps * dir[0];
      b.T += eps * dir[4];
      for (int d = 0; d < 3; ++d) {
        b.v[d] += eps * dir[1 + d];
        b.B[d] += eps * dir[5 + d];
      }
      b.psi += eps * dir[8];
      const State9 jw = entropy_vars(b, gas).w - entropy_vars(a, gas).w;
      const State9 ju = prim_to_cons(b, gas).as_array() - prim_to_cons(a, gas).as_array();
      const double dev = std::abs((h_matrix(a, b, gas) * jw)[IE] - ju[IE]) / std::abs(ju[IE]);
      if (dev_prev >= 0.0) CHECK(dev < 0.5 * dev_prev);  // at least first-order decay
      dev_prev = dev;
    }
  }

  SUBCASE("coincident states") {
    for (int it = 0; it < 20; ++it) {
      const PrimState v = tst::random_prim(g);
      const Mat9 H = h_matrix(v, v, gas);
      CHECK(tst::max_abs_diff(H, H.transposed()) < 1e-13);
      const double p = pressure(v, gas);
      CHECK(H(IMX, IMX) ==
            doctest::Approx((v.rho * v.v[0] * v.v[0] + p) / gas.R).epsilon(1e-13));
      CHECK(tst::symmetric_min_eigenvalue(H) >= -1e-12);
    }
  }
}

TEST_CASE("wave speed") {
  GasParams gas;
  gas.gamma = 1.4;
  gas.mu0 = 1.3;
  GlmParams glm;

  SUBCASE("hydrodynamic limit") {
    PrimState v{1.2, {0.4, 0, 0}, 0.9, {0, 0, 0}, 0.0};
    const double p = pressure(v, gas);
    CHECK(max_wave_speed(v, v, gas, glm) ==
          doctest::Approx(0.4 + std::sqrt(gas.gamma * p / v.rho)).epsilon(1e-14));
  }

  SUBCASE("degenerate equal speeds") {
    // gamma p / rho = b^2 / (mu0 rho) with purely axial field: c_f = a
    PrimState v{1.0, {0, 0, 0}, 1.0, {0, 0, 0}, 0.0};
    const double p = pressure(v, gas);
    const double a = std::sqrt(gas.gamma * p / v.rho);
    v.B[0] = a * std::sqrt(gas.mu0 * v.rho);
    CHECK(max_wave_speed(v, v, gas, glm) == doctest::Approx(a).epsilon(1e-12));
  }

  SUBCASE("cleaning speed dominates") {
    glm.c_h = 100.0;
    PrimState v{1.0, {0.3, 0, 0}, 1.0, {0.2, 0.1, 0}, 0.1};
    CHECK(max_wave_speed(v, v, gas, glm) == 100.0);
  }
}

TEST_CASE("llf dissipation") {
  GasParams gas;
  gas.mu0 = 1.2;
  GlmParams glm;
  glm.c_h = 0.9;
  auto g = tst::rng(909);

  SUBCASE("zero jump") {
    const PrimState v = tst::random_prim(g);
    const State9 d = llf_dissipation(v, v, gas, glm);
    for (double x : d) CHECK(std::abs(x) < 1e-14);
  }

  SUBCASE("paired entropy contribution is non-positive") {
    for (int it = 0; it < 500; ++it) {
      const PrimState a = tst::random_prim(g), b = tst::random_prim(g);
      const State9 wa = entropy_vars(a, gas).w, wb = entropy_vars(b, gas).w;
      const double s = dot(wa, llf_dissipation(a, b, gas, glm)) +
                       dot(wb, llf_dissipation(b, a, gas, glm));
      CHECK(s <= 1e-12);
    }
  }

  SUBCASE("wall ghost closed form") {
    for (int it = 0; it < 200; ++it) {
      const PrimState v = tst::random_prim(g);
      WallSpec wall;
      wall.magnetic = Insulating{{tst::uniform(g, -1.0, 1.0), tst::uniform(g, -1.0, 1.0),
                                  tst::uniform(g, -1.0, 1.0)}};
      BoundaryFace face;
      face.normal = (it % 2 == 0) ? Vec3{1, 0, 0} : Vec3{-1, 0, 0};
      face.interior = v;
      const PrimState ghost = advective_ghost(face, wall);
      const double lam = max_wave_speed(v, ghost, gas, glm);
      const double produced = dot(entropy_vars(v, gas).w, llf_dissipation(v, ghost, gas, glm));
      const double B10 = wall.external_field()[0];
      const double expected =
          -lam / v.T * (v.rho * v.v[0] * v.v[0] + (B10 - v.B[0]) * (B10 - v.B[0]) / gas.mu0);
      CHECK(std::abs(produced - expected) < 1e-12);
      CHECK(produced <= 1e-13);
    }
  }
}

TEST_CASE("viscous interface dissipation") {
  GasParams gas;
  gas.mu_ns = 0.8;
  gas.mu_r = 0.5;
  gas.kappa = 0.9;
  auto g = tst::rng(1010);

  SUBCASE("beta zero") {
    DissParams diss;
    const PrimState a = tst::random_prim(g), b = tst::random_prim(g);
    const State9 d = viscous_interface_dissipation(a, b, tst::random_state9(g), gas, diss);
    for (double x : d) CHECK(x == 0.0);
  }

  SUBCASE("quadratic form is PSD") {
    DissParams diss;
    diss.beta_visc = 0.7;
    for (int it = 0; it < 300; ++it) {
      const PrimState a = tst::random_prim(g), b = tst::random_prim(g);
      const State9 jump = entropy_vars(b, gas).w - entropy_vars(a, gas).w;
      const State9 d = viscous_interface_dissipation(a, b, jump, gas, diss);
      CHECK(dot(jump, d) >= -1e-12);
    }
  }
}

TEST_CASE("source term") {
  GasParams gas;
  GlmParams glm;
  auto g = tst::rng(1111);

  SUBCASE("no psi, default mode") {
    glm.alpha = 3.0;
    PrimState v = tst::random_prim(g);
    v.psi = 0.0;
    const State9 r = source_term(v, gas, glm);
    for (double x : r) CHECK(x == 0.0);
  }

  SUBCASE("damping row") {
    glm.alpha = 2.0;
    PrimState v = tst::random_prim(g);
    v.psi = 0.5;
    CHECK(source_term(v, gas, glm)[IPSI] == doctest::Approx(-1.0));
  }

  SUBCASE("entropy contraction is non-positive") {
    glm.alpha = 1.7;
    gas.mu0 = 1.9;
    for (int it = 0; it < 200; ++it) {
      const PrimState v = tst::random_prim(g);
      const double wr = dot(entropy_vars(v, gas).w, source_term(v, gas, glm));
      CHECK(wr == doctest::Approx(-glm.alpha * v.psi * v.psi / (gas.mu0 * v.T)).epsilon(1e-13));
      CHECK(wr <= 0.0);
    }
  }

  SUBCASE("pipe mode energy row") {
    glm.alpha = 0.0;
    glm.alpha_T = 1.5;
    glm.T0 = 1.0;
    glm.rho0 = 2.0;
    PrimState v{1.0, {0, 0, 0}, 1.2, {0, 0, 0}, 0.0};
    const State9 r = source_term(v, gas, glm);
    CHECK(r[IE] == doctest::Approx(-1.5 * 2.0 / gas.gamma * 0.2).epsilon(1e-13));
  }
}

TEST_SUITE_END();
