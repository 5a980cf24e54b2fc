#pragma once

#include <cmath>

#include "allmach/elliptic/helmholtz.hpp"
#include "oracles.hpp"

namespace oracle {

// Manufactured solution r = sin(pi x) cos(pi y) on the periodic square
// [0, 2]^2 with rho0 = p0 = 1, phi = 0.3 cos(pi x) and theta = theta0, so that
// L r = eps^2 r - beta (gamma lap r + d/dx (r phi_x)) is known in closed form.
// Returns the max-norm error of the discrete solve on an n x n grid.
inline double helmholtz_mms_error(int n, double eps = 0.5, double tau = 0.1) {
  using namespace allmach;
  const double gamma = 1.4;
  SimParams prm;
  prm.eps = eps;
  prm.gamma = gamma;
  const Grid g(0.0, 2.0, n, 0.0, 2.0, n);
  HydrostaticState hs;
  hs.rho0 = [](double, double) { return 1.0; };
  hs.p0 = [](double, double) { return 1.0; };
  hs.phi = [](double x, double) { return 0.3 * std::cos(kPi * x); };
  hs.grad_phi = [](double x, double) {
    return std::array<double, 2>{-0.3 * kPi * std::sin(kPi * x), 0.0};
  };
  const Background bg = sample_background(hs, g, gamma);
  const BoundarySpec bc;
  const double e2 = eps * eps;
  const double beta = tau * tau * (1.0 - e2) * (1.0 - e2);

  auto exact = [](double x, double y) { return std::sin(kPi * x) * std::cos(kPi * y); };
  auto forcing = [&](double x, double y) {
    const double r = exact(x, y);
    const double rx = kPi * std::cos(kPi * x) * std::cos(kPi * y);
    const double lap = -2.0 * kPi * kPi * r;
    const double phix = -0.3 * kPi * std::sin(kPi * x);
    const double phixx = -0.3 * kPi * kPi * std::cos(kPi * x);
    return e2 * r - beta * (gamma * lap + rx * phix + r * phixx);
  };

  Field rhs(g), theta2(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) rhs(i, j) = forcing(g.x(i), g.y(j));
  const EllipticSystem sys = assemble_helmholtz(rhs, bg.theta0, theta2, bg, tau, prm, bc);
  const Field r2 = solve_rho2(sys, prm, bc);
  double err = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) err = std::max(err, std::abs(r2(i, j) - exact(g.x(i), g.y(j))));
  return err;
}

}  // namespace oracle
