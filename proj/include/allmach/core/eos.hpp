#pragma once

#include "allmach/core/state.hpp"

namespace allmach {

// E = eps^2 rho |u|^2 / 2 + p / (gamma - 1)
double eos_total_energy(double rho, double ux, double uy, double p, const SimParams& prm);

// p = (gamma - 1) (E - eps^2 |q|^2 / (2 rho)); throws DomainError if p < 0 or rho <= 0
double eos_pressure(double rho, double qx, double qy, double E, const SimParams& prm);

// Same as eos_pressure without the admissibility check.
inline double eos_pressure_raw(double rho, double qx, double qy, double E, double eps2,
                               double gamma) {
  return (gamma - 1.0) * (E - 0.5 * eps2 * (qx * qx + qy * qy) / rho);
}

// theta = p^(1/gamma) / rho
double potential_temperature(double rho, double p, double gamma);

// Pressure field of a state, all nodes. Throws NumericalStateError on the
// first inadmissible interior-or-ghost node.
Field pressure_field(const ConservedField& U, const SimParams& prm);

// max over interior nodes of |u| + min(1, 1/eps) c, accumulated in row-major order
double max_signal_speed(const ConservedField& U, const SimParams& prm);

}  // namespace allmach
