#include "allmach/core/eos.hpp"

#include <cmath>

#include "allmach/core/errors.hpp"

namespace allmach {

double eos_total_energy(double rho, double ux, double uy, double p, const SimParams& prm) {
  if (!(rho > 0.0)) throw DomainError("eos_total_energy: density must be positive");
  if (!(p >= 0.0)) throw DomainError("eos_total_energy: pressure must be nonnegative");
  return 0.5 * prm.eps2() * rho * (ux * ux + uy * uy) + p / (prm.gamma - 1.0);
}

double eos_pressure(double rho, double qx, double qy, double E, const SimParams& prm) {
  if (!(rho > 0.0)) throw DomainError("eos_pressure: density must be positive");
  const double p = eos_pressure_raw(rho, qx, qy, E, prm.eps2(), prm.gamma);
  if (!(p >= 0.0)) throw DomainError("eos_pressure: negative pressure");
  return p;
}

double potential_temperature(double rho, double p, double gamma) {
  if (!(rho > 0.0) || !(p >= 0.0)) throw DomainError("potential_temperature: bad state");
  return std::pow(p, 1.0 / gamma) / rho;
}

Field pressure_field(const ConservedField& U, const SimParams& prm) {
  const Grid& g = U.grid();
  Field p(g);
  const double e2 = prm.eps2();
  for (int j = -g.gy(); j < g.ny() + g.gy(); ++j)
    for (int i = -g.gx(); i < g.nx() + g.gx(); ++i) {
      const double r = U.rho(i, j);
      if (!(r > 0.0)) throw NumericalStateError("nonpositive density", i, j);
      const double v = eos_pressure_raw(r, U.qx(i, j), U.qy(i, j), U.E(i, j), e2, prm.gamma);
      if (!(v > 0.0)) throw NumericalStateError("nonpositive pressure", i, j);
      p(i, j) = v;
    }
  return p;
}

double max_signal_speed(const ConservedField& U, const SimParams& prm) {
  const Grid& g = U.grid();
  const double e2 = prm.eps2();
  const double f = prm.sound_factor();
  double lam = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double r = U.rho(i, j);
      const double ux = U.qx(i, j) / r, uy = U.qy(i, j) / r;
      const double p = eos_pressure_raw(r, U.qx(i, j), U.qy(i, j), U.E(i, j), e2, prm.gamma);
      if (!(r > 0.0) || !(p > 0.0)) throw NumericalStateError("inadmissible state", i, j);
      const double c = std::sqrt(prm.gamma * p / r);
      lam = std::max(lam, std::sqrt(ux * ux + uy * uy) + f * c);
    }
  if (!std::isfinite(lam)) throw NumericalStateError("non-finite signal speed", -1, -1);
  return lam;
}

}  // namespace allmach
