#include "allmach/core/hydrostatic.hpp"

#include <cmath>

#include "allmach/core/eos.hpp"
#include "allmach/core/errors.hpp"

namespace allmach {

Background sample_background(const HydrostaticState& hs, const Grid& g, double gamma) {
  if (!hs.rho0 || !hs.p0 || !hs.grad_phi) throw ConfigError("background: missing callables");
  Background bg{Field(g), Field(g), Field(g), Field(g), Field(g), Field(g), Field(g), Field(g),
                hs.theta0_constant};
  if (!hs.theta0_constant && !hs.grad_theta0)
    throw ConfigError("background: nonconstant theta0 needs its gradient");
  for (int j = -g.gy(); j < g.ny() + g.gy(); ++j)
    for (int i = -g.gx(); i < g.nx() + g.gx(); ++i) {
      const double x = g.x(i), y = g.y(j);
      const double r = hs.rho0(x, y), p = hs.p0(x, y);
      if (!(r > 0.0) || !(p > 0.0))
        throw NumericalStateError("background: nonpositive rho0 or p0", i, j);
      bg.rho0(i, j) = r;
      bg.p0(i, j) = p;
      bg.E0(i, j) = p / (gamma - 1.0);
      bg.theta0(i, j) = hs.theta0 ? hs.theta0(x, y) : potential_temperature(r, p, gamma);
      const auto gp = hs.grad_phi(x, y);
      bg.phix(i, j) = gp[0];
      bg.phiy(i, j) = g.dim() == 2 ? gp[1] : 0.0;
      if (!hs.theta0_constant) {
        const auto gt = hs.grad_theta0(x, y);
        bg.dtheta0x(i, j) = gt[0];
        bg.dtheta0y(i, j) = g.dim() == 2 ? gt[1] : 0.0;
      }
    }
  return bg;
}

double hydrostatic_residual(const HydrostaticState& hs, const Grid& g) {
  double res = 0.0;
  const double hx = g.dx(), hy = g.dy();
  auto d4 = [](double fm2, double fm1, double fp1, double fp2, double h) {
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  };
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.x(i), y = g.y(j);
      std::array<double, 2> gp;
      if (hs.grad_p0) {
        gp = hs.grad_p0(x, y);
      } else {
        gp[0] = d4(hs.p0(x - 2 * hx, y), hs.p0(x - hx, y), hs.p0(x + hx, y),
                   hs.p0(x + 2 * hx, y), hx);
        gp[1] = g.dim() == 2 ? d4(hs.p0(x, y - 2 * hy), hs.p0(x, y - hy), hs.p0(x, y + hy),
                                  hs.p0(x, y + 2 * hy), hy)
                             : 0.0;
      }
      const auto gphi = hs.grad_phi(x, y);
      const double r = hs.rho0(x, y);
      const double rx = gp[0] + r * gphi[0];
      const double ry = g.dim() == 2 ? gp[1] + r * gphi[1] : 0.0;
      res = std::max(res, std::hypot(rx, ry));
    }
  return res;
}

PerturbationField perturbation_extract(const ConservedField& U, const Background& bg,
                                       const SimParams& prm, const PerturbationCache* cache) {
  const Grid& g = U.grid();
  PerturbationField out{Field(g), Field(g), U.theta2};
  if (prm.eps == 0.0) {
    if (!cache || !cache->valid)
      throw StateError("perturbation_extract: eps = 0 requires a cached elliptic solution");
    out.rho2 = cache->rho2;
    out.p2 = cache->p2;
    return out;
  }
  const double e2 = prm.eps2();
  for (int j = -g.gy(); j < g.ny() + g.gy(); ++j)
    for (int i = -g.gx(); i < g.nx() + g.gx(); ++i) {
      const double r = U.rho(i, j);
      const double p = eos_pressure_raw(r, U.qx(i, j), U.qy(i, j), U.E(i, j), e2, prm.gamma);
      out.rho2(i, j) = (r - bg.rho0(i, j)) / e2;
      out.p2(i, j) = (p - bg.p0(i, j)) / e2;
    }
  return out;
}

}  // namespace allmach
