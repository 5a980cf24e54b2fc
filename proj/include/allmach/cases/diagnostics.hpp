#pragma once

#include <string>
#include <vector>

#include "allmach/cases/scenario.hpp"

namespace allmach {

struct Diagnostics {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double lambda = 0.0;
  double div_max = 0.0;      // max |div_W q|
  double hydro_dev = 0.0;    // max of |rho - rho0|, |q|, |E - E0|
  double pdev_max = 0.0;     // max |p - p0|
  double dtheta_min = 0.0;   // theta - theta0, in kelvin for atmospheric cases
  double dtheta_max = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  bool finite = true;
};

Diagnostics compute_diagnostics(const ConservedField& U, const Discretization& d,
                                const Scenario& sc);

// theta - theta0 on every node, scaled by the case's theta_ref.
Field dtheta_field(const ConservedField& U, const Discretization& d, const Scenario& sc);

struct ConvergenceRow {
  double eps = 0.0;
  int n = 0;
  ErrorNorms err;
  double order_rho = 0.0;  // against the previous row with the same eps (0 for the first)
  double seconds = 0.0;
};

// Observed order log2(e_coarse / e_fine) for grids refined by 2.
double observed_order(double e_coarse, double e_fine);

}  // namespace allmach
