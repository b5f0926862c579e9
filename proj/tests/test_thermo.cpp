#include <doctest.h>

#include "esmhd/thermo.hpp"
#include "oracles.hpp"

using namespace esmhd;
namespace tst = esmhd::testing;

TEST_SUITE_BEGIN("thermo");

TEST_CASE("pressure from conservative state") {
  GasParams gas;  // gamma = 1.4, R = mu0 = 1
  ConsState u{1.0, {0, 0, 0}, 2.5, {0, 0, 0}, 0.0};
  CHECK(pressure(u, gas) == doctest::Approx(1.0).epsilon(1e-14));

  u.B = {1, 0, 0};
  u.E = 3.0;
  CHECK(pressure(u, gas) == doctest::Approx(1.0).epsilon(1e-14));

  u.E = 0.5;  // magnetic energy alone exhausts E
  CHECK_THROWS_AS(pressure(u, gas), NonPositivePressure);
  u.rho = -1.0;
  CHECK_THROWS_AS(pressure(u, gas), NonPositiveDensity);
}

TEST_CASE("prim/cons round trip") {
  GasParams gas;
  gas.gamma = 5.0 / 3.0;
  gas.R = 0.7;
  gas.mu0 = 2.0;

  SUBCASE("rest state energy") {
    PrimState v{1.0, {0, 0, 0}, 1.0, {0, 0, 0}, 0.0};
    const ConsState u = prim_to_cons(v, gas);
    CHECK(u.E == doctest::Approx(1.0 * gas.R * 1.0 / (gas.gamma - 1.0)).epsilon(1e-14));
  }

  SUBCASE("psi contribution to energy") {
    PrimState v{1.0, {0, 0, 0}, 1.0, {0, 0, 0}, 0.3};
    const ConsState u0 = prim_to_cons(PrimState{1.0, {0, 0, 0}, 1.0, {0, 0, 0}, 0.0}, gas);
    const ConsState u = prim_to_cons(v, gas);
    CHECK(u.E - u0.E == doctest::Approx(0.3 * 0.3 / (2.0 * gas.mu0)).epsilon(1e-14));
    CHECK(u.E - u0.E == doctest::Approx(0.0225).epsilon(1e-14));
  }

  SUBCASE("1000 random states") {
    auto g = tst::rng(101);
    for (int it = 0; it < 1000; ++it) {
      const PrimState v = tst::random_prim(g);
      const PrimState w = cons_to_prim(prim_to_cons(v, gas), gas);
      const State9 a = v.as_array(), b = w.as_array();
      for (int i = 0; i < 9; ++i)
        CHECK(std::abs(b[i] - a[i]) <= 1e-13 * std::max(1.0, std::abs(a[i])));
      // pressure is invariant under the round trip as well
      const ConsState u = prim_to_cons(v, gas);
      CHECK(pressure(prim_to_cons(cons_to_prim(u, gas), gas), gas) ==
            doctest::Approx(pressure(u, gas)).epsilon(1e-13));
    }
  }
}

TEST_CASE("entropy quantities") {
  GasParams gas;
  gas.gamma = 1.4;
  gas.R = 1.3;
  gas.T_ref = 0.9;
  gas.rho_ref = 1.1;

  SUBCASE("reference state") {
    PrimState v{gas.rho_ref, {0, 0, 0}, gas.T_ref, {0, 0, 0}, 0.0};
    CHECK(specific_entropy(v, gas) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(entropy_function(v, gas) == doctest::Approx(0.0).epsilon(1e-14));
    const State9 w = entropy_vars(v, gas).w;
    CHECK(w[IRHO] == doctest::Approx(gas.gamma * gas.R / (gas.gamma - 1.0)).epsilon(1e-14));
    CHECK(w[IE] == doctest::Approx(-1.0 / gas.T_ref).epsilon(1e-14));
  }

  SUBCASE("density doubling") {
    PrimState v{2.0 * gas.rho_ref, {0, 0, 0}, gas.T_ref, {0, 0, 0}, 0.0};
    CHECK(specific_entropy(v, gas) == doctest::Approx(-gas.R * std::log(2.0)).epsilon(1e-14));
  }

  SUBCASE("stationary entropy flux") {
    PrimState v{1.7, {0, 0.4, -0.2}, 1.2, {0.3, 0.1, 0}, 0.2};
    CHECK(entropy_flux(v, gas) == doctest::Approx(0.0));
  }

  SUBCASE("w equals the gradient of S, w[4] T = -1") {
    gas.mu0 = 1.8;
    auto g = tst::rng(202);
    for (int it = 0; it < 50; ++it) {
      const PrimState v = tst::random_prim(g);
      const ConsState u = prim_to_cons(v, gas);
      const State9 w = entropy_vars(u, gas).w;
      CHECK(w[IE] * v.T == doctest::Approx(-1.0).epsilon(1e-13));
      const State9 grad = tst::fd_gradient(
          [&](const State9& x) { return entropy_function(ConsState::from_array(x), gas); },
          u.as_array());
      for (int i = 0; i < 9; ++i)
        CHECK(std::abs(grad[i] - w[i]) <= 1e-6 * std::max(1.0, std::abs(w[i])));
    }
  }

  SUBCASE("convexity along segments") {
    auto g = tst::rng(303);
    int checked = 0;
    while (checked < 200) {
      const ConsState a = prim_to_cons(tst::random_prim(g), gas);
      const ConsState b = prim_to_cons(tst::random_prim(g), gas);
      const State9 mid = 0.5 * (a.as_array() + b.as_array());
      double Sm;
      try {
        Sm = entropy_function(ConsState::from_array(mid), gas);
      } catch (const Error&) {
        continue;
      }
      const double Sa = entropy_function(a, gas), Sb = entropy_function(b, gas);
      CHECK(Sm <= 0.5 * (Sa + Sb) + 1e-12);
      ++checked;
    }
  }
}

TEST_CASE("entropy/primitive jacobians") {
  GasParams gas;
  gas.gamma = 1.4;
  gas.R = 0.8;
  gas.mu0 = 1.5;
  auto g = tst::rng(404);

  SUBCASE("mutual inverses") {
    for (int it = 0; it < 100; ++it) {
      const PrimState v = tst::random_prim(g);
      const Mat9 prod = dvdw_jacobian(v, gas) * dwdv_jacobian(v, gas);
      Mat9 eye;
      for (int i = 0; i < 9; ++i) eye(i, i) = 1.0;
      CHECK(tst::max_abs_diff(prod, eye) < 1e-12);
    }
  }

  SUBCASE("finite-difference check of dw/dv") {
    for (int it = 0; it < 20; ++it) {
      const PrimState v = tst::random_prim(g);
      const Mat9 jac = dwdv_jacobian(v, gas);
      const Mat9 fd = tst::fd_jacobian(
          [&](const State9& x) { return entropy_vars(PrimState::from_array(x), gas).w; },
          v.as_array());
      for (int i = 0; i < 81; ++i)
        CHECK(std::abs(jac.a[i] - fd.a[i]) <= 1e-6 * std::max(1.0, std::abs(jac.a[i])));
    }
  }

  SUBCASE("finite-difference check of dv/dw") {
    // dv/dw is verified as the Jacobian of the inverse map w -> v.
    for (int it = 0; it < 20; ++it) {
      const PrimState v = tst::random_prim(g);
      const Mat9 jac = dvdw_jacobian(v, gas);
      const Mat9 fd = tst::fd_jacobian(
          [&](const State9& x) {
            // invert w -> prim analytically for the probe
            const double T = -1.0 / x[IE];
            PrimState p;
            p.T = T;
            for (int d = 0; d < 3; ++d) p.v[d] = x[IMX + d] * T;
            for (int d = 0; d < 3; ++d) p.B[d] = x[IBX + d] * gas.mu0 * T;
            p.psi = x[IPSI] * gas.mu0 * T;
            const double s_val =
                gas.gamma * gas.R / (gas.gamma - 1.0) - x[IRHO] - 0.5 * norm2(p.v) / T;
            // solve s(rho,T) = s_val for rho
            p.rho = gas.rho_ref *
                    std::exp((gas.R / (gas.gamma - 1.0) * std::log(T / gas.T_ref) - s_val) / gas.R);
            return p.as_array();
          },
          entropy_vars(v, gas).w, 1e-6);
      for (int i = 0; i < 81; ++i)
        CHECK(std::abs(jac.a[i] - fd.a[i]) <= 2e-5 * std::max(1.0, std::abs(jac.a[i])));
    }
  }

  SUBCASE("block structure at rest") {
    PrimState v{1.3, {0, 0, 0}, 0.9, {0, 0, 0}, 0.0};
    for (const Mat9& m : {dvdw_jacobian(v, gas), dwdv_jacobian(v, gas)}) {
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
          const bool hydro_i = i <= IE, hydro_j = j <= IE;
          const bool mag_i = i >= IBX && i <= IBZ, mag_j = j >= IBX && j <= IBZ;
          const bool same_block = (hydro_i && hydro_j) || (mag_i && mag_j) || (i == IPSI && j == IPSI);
          if (!same_block) CHECK(m(i, j) == 0.0);
        }
    }
  }
}

TEST_SUITE_END();
