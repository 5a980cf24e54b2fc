#include <cstdio>

#include "allmach/cli/run.hpp"

namespace allmach {

namespace {

ConservedField euler_update(const ConservedField& U, double dt, const Discretization& d) {
  const double lam = acoustic_signal_speed(U, d.prm);
  ConservedField r = U;
  r.axpy(dt, unsplit_rhs(U, d, lam));
  return r;
}

}  // namespace

ConservedField reference_explicit_step(const ConservedField& U, double dt, const Discretization& d) {
  const double limit = reference_dt(U, d, 1.0);
  if (dt > limit)
    std::fprintf(stderr, "warning: explicit step dt = %.3e exceeds the acoustic limit %.3e\n", dt,
                 limit);
  ConservedField U1 = euler_update(U, dt, d);
  fill_ghosts(U1, d.bc, d.bg);

  ConservedField U2 = euler_update(U1, dt, d);
  for (int k = 0; k < ConservedField::kVars; ++k) {
    U2.var(k) *= 0.25;
    U2.var(k).axpy(0.75, U.var(k));
  }
  fill_ghosts(U2, d.bc, d.bg);

  ConservedField U3 = euler_update(U2, dt, d);
  for (int k = 0; k < ConservedField::kVars; ++k) {
    U3.var(k) *= 2.0 / 3.0;
    U3.var(k).axpy(1.0 / 3.0, U.var(k));
  }
  fill_ghosts(U3, d.bc, d.bg);
  return U3;
}

double reference_dt(const ConservedField& U, const Discretization& d, double cfl) {
  return cfl * d.grid.min_spacing() / acoustic_signal_speed(U, d.prm);
}

}  // namespace allmach
