#pragma once

#include <array>

#include "allmach/core/grid.hpp"

namespace allmach {

enum class WeightsMode { nonlinear, linear };

struct SimParams {
  double eps = 1.0;
  double gamma = 1.4;
  double cfl = 0.2;
  WeightsMode weights = WeightsMode::nonlinear;
  double weno_eps = 1e-6;
  double solver_tol = 1e-12;
  int solver_max_iter = 1000;

  double eps2() const { return eps * eps; }
  double alpha() const { return eps2() < 1.0 ? eps2() : 1.0; }
  // min(1, 1/eps), taken as 1 at eps = 0
  double sound_factor() const { return eps > 1.0 ? 1.0 / eps : 1.0; }
  bool split() const { return eps < 1.0; }
  void validate() const;
};

// Conservative variables (rho, qx, qy, E) plus the advected theta2.
// In 1D qy is carried but stays identically zero.
struct ConservedField {
  static constexpr int kVars = 5;
  Field rho, qx, qy, E, theta2;

  ConservedField() = default;
  explicit ConservedField(const Grid& g)
      : rho(g), qx(g), qy(g), E(g), theta2(g) {}

  const Grid& grid() const { return rho.grid(); }
  Field& var(int k);
  const Field& var(int k) const;

  // this += a * x over every variable and node
  void axpy(double a, const ConservedField& x);
};

// Velocity u = q / rho (both components).
std::array<double, 2> velocity(const ConservedField& U, int i, int j);

}  // namespace allmach
