#include <algorithm>
#include <cmath>

#include "allmach/cli/run.hpp"
#include "allmach/core/eos.hpp"
#include "allmach/core/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace allmach;

TEST_CASE("all seven cases are listed and buildable") {
  const auto names = list_cases();
  CHECK(names.size() == 7);
  for (const char* n : {"accuracy1d", "accuracy2d", "shocktube", "vortex", "isothermal", "bubble", "igw"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS(build_case("nope"), ConfigError);
}

TEST_CASE("every background is hydrostatic and every initial state admissible") {
  for (const auto& n : list_cases()) {
    CAPTURE(n);
    const Scenario sc = build_case(n);
    const Grid g = make_grid(sc);
    CHECK(hydrostatic_residual(sc.hs, g) <= 1e-12);
    const Discretization d = make_discretization(sc, g);
    ConservedField U = initial_state(sc, g);
    fill_ghosts(U, d.bc, d.bg);
    CHECK_NOTHROW(pressure_field(U, sc.prm));
  }
}

TEST_CASE("isothermal background follows its closed form") {
  const Scenario sc = build_case("isothermal");
  for (double x : {0.1, 0.7})
    for (double y : {0.2, 0.9}) {
      const double e = std::exp(-1.21 * (x + y));
      CHECK(sc.hs.rho0(x, y) == doctest::Approx(1.21 * e).epsilon(1e-14));
      CHECK(sc.hs.p0(x, y) == doctest::Approx(e).epsilon(1e-14));
    }
}

TEST_CASE("case overrides are validated") {
  CaseOverrides ov;
  ov.eps = 0.1;
  CHECK_THROWS_AS(build_case("vortex", ov), ConfigError);
  CHECK_THROWS_AS(build_case("bubble", ov), ConfigError);
  CHECK_THROWS_AS(build_case("igw", ov), ConfigError);
  ov.eps = 0.0;
  CHECK_THROWS_AS(build_case("shocktube", ov), ConfigError);
  CaseOverrides n;
  n.nx = 40;
  const Scenario sc = build_case("accuracy2d", n);
  CHECK(sc.nx == 40);
  CHECK(sc.ny == 40);
}

TEST_CASE("steady cases start on their exact solution") {
  for (const char* name : {"accuracy1d", "accuracy2d"})
    for (double eps : {1.0, 1e-2, 0.0}) {
      CaseOverrides ov;
      ov.eps = eps;
      ov.nx = 16;
      const Scenario sc = build_case(name, ov);
      REQUIRE(sc.steady);
      const Grid g = make_grid(sc);
      const auto ex = exact_solution(sc, g, 0.0);
      REQUIRE(ex.has_value());
      const ConservedField U = initial_state(sc, g);
      const ErrorNorms e = l1_error(U, *ex);
      CHECK(e.rho + e.qx + e.qy + e.E <= 1e-14);
    }
  CHECK(!exact_solution(build_case("bubble"), make_grid(build_case("bubble")), 0.0).has_value());
}

TEST_CASE("L1 norm weights by the cell volume and orders use log2") {
  const Grid g(0.0, 2.0, 4, 0.0, 1.0, 2);
  ConservedField a(g), b(g);
  a.rho(1, 1) = 3.0;
  b.E(0, 0) = -1.0;
  const ErrorNorms e = l1_error(a, b);
  CHECK(e.rho == doctest::Approx(3.0 * 0.25));
  CHECK(e.E == doctest::Approx(0.25));
  CHECK(e.qx == 0.0);
  CHECK(observed_order(8.0, 1.0) == doctest::Approx(3.0));
}

TEST_CASE("temperature anomalies are reported in kelvin") {
  for (const char* name : {"bubble", "igw"}) {
    CAPTURE(name);
    const Scenario sc = build_case(name);
    const Grid g = make_grid(sc);
    const Discretization d = make_discretization(sc, g);
    ConservedField U = initial_state(sc, g);
    fill_ghosts(U, d.bc, d.bg);
    const Diagnostics dg = compute_diagnostics(U, d, sc);
    CHECK(dg.dtheta_min >= -1e-12);
    if (std::string(name) == "igw") CHECK(dg.dtheta_max == doctest::Approx(0.01).epsilon(0.05));
    else CHECK(dg.dtheta_max == doctest::Approx(0.5).epsilon(0.05));
  }
}

TEST_CASE("well-prepared data has a small discrete divergence") {
  CaseOverrides ov;
  ov.eps = 0.0;
  ov.nx = 64;
  const Scenario sc = build_case("accuracy1d", ov);
  const Grid g = make_grid(sc);
  const Discretization d = make_discretization(sc, g);
  ConservedField U = initial_state(sc, g);
  fill_ghosts(U, d.bc, d.bg);
  CHECK(compute_diagnostics(U, d, sc).div_max <= 1e-8);
}
