#include <cmath>
#include <random>

#include "allmach/core/errors.hpp"
#include "allmach/elliptic/helmholtz.hpp"
#include "doctest.h"
#include "mms.hpp"

using namespace allmach;

namespace {

HydrostaticState stratified() {
  HydrostaticState hs;
  hs.rho0 = [](double x, double y) { return std::exp(-y) * (1.0 + 0.1 * std::sin(oracle::kPi * x)); };
  hs.p0 = [](double, double y) { return std::exp(-y); };
  hs.phi = [](double x, double y) { return y + 0.05 * std::cos(oracle::kPi * x); };
  hs.grad_phi = [](double x, double) {
    return std::array<double, 2>{-0.05 * oracle::kPi * std::sin(oracle::kPi * x), 1.0};
  };
  return hs;
}

}  // namespace

TEST_CASE("manufactured solution converges at fourth order") {
  const double e1 = oracle::helmholtz_mms_error(16), e2 = oracle::helmholtz_mms_error(32),
               e3 = oracle::helmholtz_mms_error(64);
  CHECK(std::log2(e1 / e2) >= 3.5);
  CHECK(std::log2(e2 / e3) >= 3.5);
}

TEST_CASE("assembled matrix matches the matrix-free operator") {
  const Grid g(0.0, 2.0, 12, 0.0, 1.0, 10);
  SimParams prm;
  prm.eps = 0.3;
  const Background bg = sample_background(stratified(), g, prm.gamma);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field theta(g), theta2(g), x(g);
  for (std::size_t k = 0; k < g.size(); ++k) theta.data()[k] = bg.theta0.data()[k] * (1.0 + 0.1 * u(rng));
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) x(i, j) = u(rng);

  for (auto kinds : {std::array{BoundaryKind::periodic, BoundaryKind::periodic,
                                BoundaryKind::periodic, BoundaryKind::periodic},
                     std::array{BoundaryKind::periodic, BoundaryKind::periodic,
                                BoundaryKind::inviscid_wall, BoundaryKind::inviscid_wall},
                     std::array{BoundaryKind::outflow, BoundaryKind::transmissive_split,
                                BoundaryKind::inviscid_wall, BoundaryKind::outflow}}) {
    BoundarySpec bc;
    bc.kind = kinds;
    fill_scalar_ghosts(theta, bc, Parity::even, Parity::even, nullptr);
    Field xg = x;
    fill_scalar_ghosts(xg, bc, Parity::even, Parity::even, nullptr);
    const Field zero(g);
    const EllipticSystem sys = assemble_helmholtz(zero, theta, theta2, bg, 0.05, prm, bc);
    Eigen::VectorXd v(g.nx() * g.ny());
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) v[j * g.nx() + i] = x(i, j);
    const Eigen::VectorXd Av = sys.A * v;
    const Field ref = apply_helmholtz(xg, theta, bg, 0.05, prm);
    double err = 0.0;
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) err = std::max(err, std::abs(Av[j * g.nx() + i] - ref(i, j)));
    CHECK(err <= 1e-10);
    CHECK(sys.rhs.norm() == 0.0);
  }
}

TEST_CASE("solve returns the preimage and fills ghosts") {
  const Grid g(0.0, 2.0, 16, 0.0, 1.0, 8);
  SimParams prm;
  prm.eps = 0.1;
  const Background bg = sample_background(stratified(), g, prm.gamma);
  BoundarySpec bc;
  bc.kind = {BoundaryKind::periodic, BoundaryKind::periodic, BoundaryKind::inviscid_wall,
             BoundaryKind::inviscid_wall};
  Field theta = bg.theta0, theta2(g), r(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) r(i, j) = std::sin(oracle::kPi * g.x(i)) * std::cos(oracle::kPi * g.y(j));
  fill_scalar_ghosts(r, bc, Parity::even, Parity::even, nullptr);
  const double tau = 0.02;
  const Field rhs = apply_helmholtz(r, theta, bg, tau, prm);
  const EllipticSystem sys = assemble_helmholtz(rhs, theta, theta2, bg, tau, prm, bc);
  SolveStats st;
  auto ws = make_elliptic_workspace();
  for (int pass = 0; pass < 2; ++pass) {
    const Field s = solve_rho2(sys, prm, bc, &st, ws.get());
    double err = 0.0;
    for (int j = -g.gy(); j < g.ny() + g.gy(); ++j)
      for (int i = -g.gx(); i < g.nx() + g.gx(); ++i) err = std::max(err, std::abs(s(i, j) - r(i, j)));
    CHECK(err <= 1e-9);
    CHECK(st.residual <= prm.solver_tol * 10.0);
  }
}

TEST_CASE("zero time step reduces the operator to eps^2 times identity") {
  const Grid g(0.0, 1.0, 8);
  SimParams prm;
  prm.eps = 0.5;
  HydrostaticState hs;
  hs.rho0 = [](double, double) { return 1.0; };
  hs.p0 = [](double, double) { return 1.0; };
  hs.grad_phi = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
  const Background bg = sample_background(hs, g, prm.gamma);
  const BoundarySpec bc;
  Field rhs(g, 2.0), t2(g);
  const EllipticSystem sys = assemble_helmholtz(rhs, bg.theta0, t2, bg, 0.0, prm, bc);
  CHECK(sys.identity);
  const Field s = solve_rho2(sys, prm, bc);
  CHECK(s(3) == doctest::Approx(8.0));
  prm.eps = 0.0;
  CHECK_THROWS_AS(assemble_helmholtz(rhs, bg.theta0, t2, bg, 0.0, prm, bc), ConfigError);
}

TEST_CASE("p2 closure follows the linearised equation of state") {
  const Grid g(0.0, 1.0, 4);
  SimParams prm;
  prm.eps = 0.2;
  const Background bg = sample_background(stratified(), g, prm.gamma);
  Field rho2(g, 0.7), theta2(g, -0.3), theta = bg.theta0;
  const Field p2 = p2_from_rho2(rho2, theta2, theta, bg, prm);
  for (int i = 0; i < 4; ++i) {
    const double want = prm.gamma * bg.p0(i) / (bg.rho0(i) * bg.theta0(i)) *
                        (bg.rho0(i) * theta2(i) + rho2(i) * theta(i));
    CHECK(p2(i) == doctest::Approx(want).epsilon(1e-14));
  }
}
