#pragma once

#include <array>
#include <functional>

#include "allmach/core/state.hpp"

namespace allmach {

using ScalarFn = std::function<double(double, double)>;
using VectorFn = std::function<std::array<double, 2>(double, double)>;

// Hydrostatic background (rho0, p0) for a potential phi, given as callables.
// grad_p0 and grad_theta0 are optional analytic derivatives; an empty
// grad_theta0 together with theta0_constant means theta0 is uniform.
struct HydrostaticState {
  ScalarFn rho0;
  ScalarFn p0;
  ScalarFn theta0;
  ScalarFn phi;
  VectorFn grad_phi;
  VectorFn grad_p0;
  VectorFn grad_theta0;
  bool theta0_constant = true;
};

// Background sampled on every node (ghosts included) of one grid.
struct Background {
  Field rho0, p0, E0, theta0;
  Field phix, phiy;
  Field dtheta0x, dtheta0y;
  bool theta0_constant = true;
};

Background sample_background(const HydrostaticState& hs, const Grid& g, double gamma);

// max over interior nodes of |grad p0 + rho0 grad phi|. Uses grad_p0 when
// available, otherwise fourth-order central differences of the p0 callable.
double hydrostatic_residual(const HydrostaticState& hs, const Grid& g);

struct PerturbationField {
  Field rho2, p2, theta2;
};

// Second-order perturbations of the last elliptic solve, needed when eps = 0.
struct PerturbationCache {
  Field rho2, p2;
  bool valid = false;
};

// rho2 = (rho - rho0)/eps^2, p2 = (p - p0)/eps^2 for eps > 0; at eps = 0 the
// cache is returned and StateError is thrown if there is none.
PerturbationField perturbation_extract(const ConservedField& U, const Background& bg,
                                       const SimParams& prm,
                                       const PerturbationCache* cache = nullptr);

}  // namespace allmach
