#include <cmath>

#include "allmach/boundary/boundary.hpp"
#include "allmach/core/errors.hpp"
#include "doctest.h"

using namespace allmach;

namespace {

const Grid kGrid(0.0, 1.0, 6, 0.0, 1.0, 5);

Background linear_background() {
  HydrostaticState hs;
  hs.rho0 = [](double x, double y) { return 2.0 + x + y; };
  hs.p0 = [](double x, double y) { return 3.0 + x - y; };
  hs.phi = [](double x, double y) { return x * y; };
  hs.grad_phi = [](double x, double y) { return std::array<double, 2>{y, x}; };
  return sample_background(hs, kGrid, 1.4);
}

ConservedField numbered() {
  ConservedField U(kGrid);
  for (int k = 0; k < ConservedField::kVars; ++k)
    for (int j = 0; j < kGrid.ny(); ++j)
      for (int i = 0; i < kGrid.nx(); ++i) U.var(k)(i, j) = 100.0 * k + 10.0 * j + i + 1.0;
  return U;
}

BoundarySpec all(BoundaryKind k) {
  BoundarySpec bc;
  bc.kind = {k, k, k, k};
  return bc;
}

}  // namespace

TEST_CASE("periodic ghosts wrap every variable including corners") {
  ConservedField U = numbered();
  const Background bg = linear_background();
  fill_ghosts(U, all(BoundaryKind::periodic), bg);
  for (int k = 0; k < ConservedField::kVars; ++k) {
    const Field& f = U.var(k);
    CHECK(f(-1, 2) == f(5, 2));
    CHECK(f(-3, 0) == f(3, 0));
    CHECK(f(6, 4) == f(0, 4));
    CHECK(f(2, -2) == f(2, 3));
    CHECK(f(1, 7) == f(1, 2));
    CHECK(f(-1, -1) == f(5, 4));
    CHECK(f(8, 6) == f(2, 1));
  }
}

TEST_CASE("walls mirror with odd normal momentum and balanced deviations") {
  ConservedField U = numbered();
  const Background bg = linear_background();
  fill_ghosts(U, all(BoundaryKind::inviscid_wall), bg);
  CHECK(U.qx(-1, 2) == -U.qx(0, 2));
  CHECK(U.qx(-3, 2) == -U.qx(2, 2));
  CHECK(U.qy(-2, 2) == U.qy(1, 2));
  CHECK(U.qy(3, -1) == -U.qy(3, 0));
  CHECK(U.qx(3, 5) == U.qx(3, 4));
  CHECK(U.theta2(7, 1) == U.theta2(4, 1));
  CHECK(U.rho(-1, 2) - bg.rho0(-1, 2) == doctest::Approx(U.rho(0, 2) - bg.rho0(0, 2)));
  CHECK(U.E(2, 6) - bg.E0(2, 6) == doctest::Approx(U.E(2, 3) - bg.E0(2, 3)));
}

TEST_CASE("transmissive sides keep the normal momentum sign") {
  ConservedField U = numbered();
  const Background bg = linear_background();
  fill_ghosts(U, all(BoundaryKind::transmissive_split), bg);
  CHECK(U.qx(-1, 2) == U.qx(0, 2));
  CHECK(U.qy(3, 6) == U.qy(3, 3));
  CHECK(U.rho(6, 0) - bg.rho0(6, 0) == doctest::Approx(U.rho(5, 0) - bg.rho0(5, 0)));
}

TEST_CASE("an equilibrium state stays an equilibrium through wall and transmissive fills") {
  const Background bg = linear_background();
  for (BoundaryKind k : {BoundaryKind::inviscid_wall, BoundaryKind::transmissive_split}) {
    ConservedField U(kGrid);
    for (int j = -3; j < 8; ++j)
      for (int i = -3; i < 9; ++i) {
        U.rho(i, j) = (i >= 0 && i < 6 && j >= 0 && j < 5) ? bg.rho0(i, j) : 0.0;
        U.E(i, j) = (i >= 0 && i < 6 && j >= 0 && j < 5) ? bg.E0(i, j) : 0.0;
      }
    fill_ghosts(U, all(k), bg);
    for (int j = -3; j < 8; ++j)
      for (int i = -3; i < 9; ++i) {
        if ((i < 0 || i >= 6) && (j < 0 || j >= 5)) continue;
        CHECK(U.rho(i, j) == doctest::Approx(bg.rho0(i, j)).epsilon(1e-15));
        CHECK(U.E(i, j) == doctest::Approx(bg.E0(i, j)).epsilon(1e-15));
      }
  }
}

TEST_CASE("outflow copies the boundary node and inflow copies the pinned state") {
  ConservedField U = numbered();
  const Background bg = linear_background();
  auto pinned = std::make_shared<ConservedField>(kGrid);
  for (int k = 0; k < ConservedField::kVars; ++k) pinned->var(k).fill(-7.0 - k);
  BoundarySpec bc;
  bc.kind = {BoundaryKind::inflow, BoundaryKind::outflow, BoundaryKind::outflow,
             BoundaryKind::inflow};
  bc.pinned = pinned;
  fill_ghosts(U, bc, bg);
  CHECK(U.rho(-2, 1) == -7.0);
  CHECK(U.E(-1, 3) == -10.0);
  CHECK(U.qx(7, 2) == U.qx(5, 2));
  CHECK(U.qy(2, -3) == U.qy(2, 0));
  CHECK(U.theta2(4, 6) == -11.0);

  bc.pinned.reset();
  CHECK_THROWS_AS(bc.validate(kGrid), ConfigError);
}

TEST_CASE("scalar fills honour parity") {
  Field f(kGrid);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i) f(i, j) = 1.0 + i + 10.0 * j;
  fill_scalar_ghosts(f, all(BoundaryKind::inviscid_wall), Parity::odd, Parity::even, nullptr);
  CHECK(f(-1, 2) == -f(0, 2));
  CHECK(f(8, 1) == -f(3, 1));
  CHECK(f(2, -1) == f(2, 0));
  CHECK(f(2, 7) == f(2, 2));
  CHECK_THROWS_AS(fill_scalar_ghosts(f, all(BoundaryKind::inflow), Parity::even, Parity::even, nullptr),
                  ConfigError);
}

TEST_CASE("periodic sides come in pairs and wrap the background") {
  BoundarySpec bc;
  bc.kind = {BoundaryKind::periodic, BoundaryKind::outflow, BoundaryKind::periodic,
             BoundaryKind::periodic};
  CHECK_THROWS_AS(bc.validate(kGrid), ConfigError);
  CHECK(parse_boundary_kind(to_string(BoundaryKind::transmissive_split)) ==
        BoundaryKind::transmissive_split);
  CHECK_THROWS_AS(parse_boundary_kind("sticky"), ConfigError);

  Background bg = linear_background();
  bc.kind = {BoundaryKind::periodic, BoundaryKind::periodic, BoundaryKind::inviscid_wall,
             BoundaryKind::inviscid_wall};
  const double wall_ghost = bg.rho0(2, -1);
  wrap_periodic_background(bg, bc);
  CHECK(bg.rho0(-1, 2) == bg.rho0(5, 2));
  CHECK(bg.p0(7, 0) == bg.p0(1, 0));
  CHECK(bg.phiy(-3, 4) == bg.phiy(3, 4));
  CHECK(bg.rho0(2, -1) == wall_ghost);
}
