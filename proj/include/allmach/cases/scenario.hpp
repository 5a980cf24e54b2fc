#pragma once

#include <optional>
#include <string>
#include <vector>

#include "allmach/integrator/imex.hpp"

namespace allmach {

// A named test problem in dimensionless variables.
struct Scenario {
  std::string name;
  std::string description;
  int dim = 1;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  int nx = 64, ny = 1;
  SimParams prm;
  double t_end = 0.1;
  std::string scheme = "imex3";
  HydrostaticState hs;
  std::array<BoundaryKind, 4> bc{};

  // initial data on the physical coordinates
  ScalarFn rho, ux, uy, p, theta2;
  ScalarFn rho2, p2;  // second-order perturbations when known in closed form
  bool steady = false;
  bool perturbed = false;

  double theta_ref = 1.0;  // kelvin per dimensionless theta unit (1 for non-atmospheric)
  double length_ref = 1.0, time_ref = 1.0;
};

struct CaseOverrides {
  std::optional<int> nx, ny;
  std::optional<double> eps, cfl, t_end;
  std::optional<WeightsMode> weights;
  bool perturbed = false;   // isothermal: add the pressure pulse
  bool printed_p2 = false;  // accuracy2d: p2 varying with x only
};

std::vector<std::string> list_cases();

// Throws ConfigError for unknown names or overrides the case does not allow.
Scenario build_case(const std::string& name, const CaseOverrides& ov = {});

Grid make_grid(const Scenario& sc);
Grid make_grid(const Scenario& sc, int nx, int ny);

// Initial state on every node, ghosts included.
ConservedField initial_state(const Scenario& sc, const Grid& g);

// Discretisation with the boundary description (inflow ghosts pinned to the
// initial data).
Discretization make_discretization(const Scenario& sc, const Grid& g);

// Cache seeded from the closed-form perturbations, or from the state when eps > 0.
PerturbationCache initial_cache(const Scenario& sc, const Discretization& d,
                                const ConservedField& U0);

// Exact solution at time t where one is known (steady cases).
std::optional<ConservedField> exact_solution(const Scenario& sc, const Grid& g, double t);

struct ErrorNorms {
  double rho = 0.0, qx = 0.0, qy = 0.0, E = 0.0;
};

// L1 norms (sum of |difference| times cell volume) over interior nodes.
ErrorNorms l1_error(const ConservedField& U, const ConservedField& ref);

}  // namespace allmach
