#include "allmach/cases/diagnostics.hpp"

#include <cmath>

#include "allmach/core/eos.hpp"
#include "allmach/stencil/operators.hpp"

namespace allmach {

Field dtheta_field(const ConservedField& U, const Discretization& d, const Scenario& sc) {
  const Grid& g = U.grid();
  Field f(g);
  const double e2 = d.prm.eps2();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double r = U.rho(i, j);
      const double p = eos_pressure_raw(r, U.qx(i, j), U.qy(i, j), U.E(i, j), e2, d.prm.gamma);
      const double th = p > 0.0 && r > 0.0 ? std::pow(p, 1.0 / d.prm.gamma) / r : NAN;
      f(i, j) = (th - d.bg.theta0(i, j)) * sc.theta_ref;
    }
  return f;
}

Diagnostics compute_diagnostics(const ConservedField& U, const Discretization& d,
                                const Scenario& sc) {
  const Grid& g = U.grid();
  Diagnostics out;
  const double e2 = d.prm.eps2();
  double lam = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      for (int k = 0; k < 4; ++k)
        if (!std::isfinite(U.var(k)(i, j))) out.finite = false;
      const double r = U.rho(i, j);
      const double p = eos_pressure_raw(r, U.qx(i, j), U.qy(i, j), U.E(i, j), e2, d.prm.gamma);
      if (!(r > 0.0) || !(p > 0.0)) out.finite = false;
      const double dev = std::max({std::abs(r - d.bg.rho0(i, j)), std::abs(U.qx(i, j)),
                                   std::abs(U.qy(i, j)), std::abs(U.E(i, j) - d.bg.E0(i, j))});
      out.hydro_dev = std::max(out.hydro_dev, dev);
      out.pdev_max = std::max(out.pdev_max, std::abs(p - d.bg.p0(i, j)));
      if (r > 0.0 && p > 0.0) {
        const double ux = U.qx(i, j) / r, uy = U.qy(i, j) / r;
        lam = std::max(lam, std::hypot(ux, uy) + d.prm.sound_factor() * std::sqrt(d.prm.gamma * p / r));
      }
    }
  out.lambda = lam;
  out.mass = integrate_interior(U.rho);
  out.energy = integrate_interior(U.E);
  if (!out.finite) return out;

  Field vr = U.rho;
  vr -= d.bg.rho0;
  const Field dq = div_w(U.qx, vr, &U.qy, &vr, lam, d.weno);
  out.div_max = max_abs_interior(dq);
  const Field dt = dtheta_field(U, d, sc);
  out.dtheta_min = dt(0, 0);
  out.dtheta_max = dt(0, 0);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      out.dtheta_min = std::min(out.dtheta_min, dt(i, j));
      out.dtheta_max = std::max(out.dtheta_max, dt(i, j));
    }
  return out;
}

double observed_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return 0.0;
  return std::log2(e_coarse / e_fine);
}

}  // namespace allmach
