#include "allmach/integrator/imex.hpp"

#include <cmath>

#include "allmach/core/eos.hpp"
#include "allmach/core/errors.hpp"
#include "allmach/elliptic/helmholtz.hpp"
#include "allmach/stencil/operators.hpp"

namespace allmach {

namespace {

// Background of the rescaled unsplit system: pressure and energy divided by
// eps^2, potential gradient divided by eps^2.
Background rescaled_background(const Background& bg, double eps2) {
  Background s = bg;
  s.p0 *= 1.0 / eps2;
  s.E0 *= 1.0 / eps2;
  s.phix *= 1.0 / eps2;
  s.phiy *= 1.0 / eps2;
  return s;
}

Field theta_advection(const ConservedField& U, const Discretization& d) {
  const Grid& g = U.grid();
  Field ux(g), uy(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    ux.data()[k] = U.qx.data()[k] / U.rho.data()[k];
    uy.data()[k] = U.qy.data()[k] / U.rho.data()[k];
  }
  Field t = grad_uw(U.theta2, ux, uy, d.weno);
  if (!d.bg.theta0_constant) {
    const double e2 = d.prm.eps2();
    if (e2 == 0.0) throw ConfigError("nonconstant theta0 requires eps > 0");
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        t(i, j) += (ux(i, j) * d.bg.dtheta0x(i, j) + uy(i, j) * d.bg.dtheta0y(i, j)) / e2;
  }
  return t;
}

void pressure_split_e2(const ConservedField& U, const Background& bg, double e2, double gamma,
                       Field& p, Field& dp) {
  const Grid& g = U.grid();
  const double gm1 = gamma - 1.0;
  for (int j = -g.gy(); j < g.ny() + g.gy(); ++j)
    for (int i = -g.gx(); i < g.nx() + g.gx(); ++i) {
      const double r = U.rho(i, j);
      if (!(r > 0.0)) throw NumericalStateError("nonpositive density", i, j);
      const double a = U.qx(i, j), b = U.qy(i, j);
      const double v = gm1 * ((U.E(i, j) - bg.E0(i, j)) - 0.5 * e2 * (a * a + b * b) / r);
      const double pv = bg.p0(i, j) + v;
      if (!(pv > 0.0)) throw NumericalStateError("nonpositive pressure", i, j);
      dp(i, j) = v;
      p(i, j) = pv;
    }
}

// Well-balanced divergence terms of the Euler system written with pressure
// p0 + dp, eigen-system evaluated at eps_jac. energy excludes the potential term.
ExplicitTerms wb_euler_terms(const ConservedField& U, const Background& bg, double gamma,
                             double eps_jac, double e2_state, double lambda,
                             const WenoConfig& cfg) {
  const Grid& g = U.grid();
  Field p(g), dp(g);
  pressure_split_e2(U, bg, e2_state, gamma, p, dp);
  const CwResult cw = div_cw_wb(U, p, dp, bg, lambda, gamma, eps_jac, cfg);
  ExplicitTerms t{Field(g), Field(g), Field(g), Field(g), Field(g)};
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double w = 1.0 - U.rho(i, j) / bg.rho0(i, j);
      t.mass(i, j) = cw.dev[0](i, j) + cw.src[0](i, j);
      t.momx(i, j) = cw.dev[1](i, j) + w * cw.src[1](i, j);
      t.momy(i, j) = cw.dev[2](i, j) + w * cw.src[2](i, j);
      t.energy(i, j) = cw.dev[3](i, j) + cw.src[3](i, j);
    }
  return t;
}

ExplicitTerms unsplit_terms(const ConservedField& U, const Discretization& d, double lambda) {
  const double e2 = d.prm.eps2();
  if (!(e2 > 0.0)) throw ConfigError("unsplit operator requires eps > 0");
  const Grid& g = U.grid();
  const Background bs = rescaled_background(d.bg, e2);
  ConservedField Us = U;
  Us.E *= 1.0 / e2;
  ExplicitTerms t = wb_euler_terms(Us, bs, d.prm.gamma, 1.0, 1.0, lambda, d.weno);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      t.energy(i, j) = e2 * t.energy(i, j) +
                       (U.qx(i, j) * d.bg.phix(i, j) + U.qy(i, j) * d.bg.phiy(i, j));
  t.theta = theta_advection(U, d);
  return t;
}

Field enthalpy_flux(const Field& q, const Field& qx, const Field& qy, const Field& rho2,
                    const Field& p2, const Discretization& d) {
  const Grid& g = q.grid();
  const double e2 = d.prm.eps2(), gm = d.prm.gamma;
  Field f(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r = d.bg.rho0.data()[k] + e2 * rho2.data()[k];
    const double p = d.bg.p0.data()[k] + e2 * p2.data()[k];
    const double a = qx.data()[k], b = qy.data()[k];
    const double H = gm / (gm - 1.0) * p / r + 0.5 * e2 * (a * a + b * b) / (r * r);
    f.data()[k] = H * q.data()[k];
  }
  return f;
}

Field diff(const Field& a, const Field& b) {
  Field r = a;
  r -= b;
  return r;
}

}  // namespace

Discretization::Discretization(const Grid& g, const SimParams& p, const HydrostaticState& hs,
                               const BoundarySpec& b)
    : grid(g), prm(p), weno(WenoConfig::from(p)), bg(sample_background(hs, g, p.gamma)), bc(b),
      elliptic_ws(make_elliptic_workspace()) {
  prm.validate();
  bc.validate(g);
  wrap_periodic_background(bg, bc);
  if (!bg.theta0_constant && prm.eps == 0.0)
    throw ConfigError("nonconstant theta0 is not admissible at eps = 0");
}

void pressure_split(const ConservedField& U, const Background& bg, const SimParams& prm, Field& p,
                    Field& dp) {
  pressure_split_e2(U, bg, prm.eps2(), prm.gamma, p, dp);
}

ExplicitTerms explicit_terms(const ConservedField& U, const Discretization& d, double lambda) {
  if (!d.prm.split()) return unsplit_terms(U, d, lambda);
  const Grid& g = U.grid();
  const double e2 = d.prm.eps2();
  ExplicitTerms t = wb_euler_terms(U, d.bg, d.prm.gamma, d.prm.eps, e2, lambda, d.weno);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      t.mass(i, j) *= e2;
      t.energy(i, j) =
          e2 * (t.energy(i, j) + (U.qx(i, j) * d.bg.phix(i, j) + U.qy(i, j) * d.bg.phiy(i, j)));
    }
  t.theta = theta_advection(U, d);
  return t;
}

ConservedField spatial_operator(const ConservedField& U_E, const ConservedField& U_I,
                                const PerturbationField& pert_I, const Discretization& d,
                                double lambda) {
  const Grid& g = U_E.grid();
  ExplicitTerms ex = explicit_terms(U_E, d, lambda);
  ConservedField H(g);
  H.rho.axpy(-1.0, ex.mass);
  H.qx.axpy(-1.0, ex.momx);
  H.qy.axpy(-1.0, ex.momy);
  H.E.axpy(-1.0, ex.energy);
  H.theta2.axpy(-1.0, ex.theta);
  if (!d.prm.split()) return H;

  const double om = 1.0 - d.prm.eps2();
  const bool two = g.dim() == 2;
  const Field vr = diff(U_I.rho, d.bg.rho0);
  const Field ve = diff(U_I.E, d.bg.E0);
  const Field divq = div_w(U_I.qx, vr, &U_I.qy, &vr, lambda, d.weno);
  const Field dpx = deriv_w(pert_I.p2, U_I.qx, Axis::x, lambda, d.weno);
  const Field dpy = two ? deriv_w(pert_I.p2, U_I.qy, Axis::y, lambda, d.weno) : Field(g);
  const Field fx = enthalpy_flux(U_I.qx, U_I.qx, U_I.qy, pert_I.rho2, pert_I.p2, d);
  const Field fy = enthalpy_flux(U_I.qy, U_I.qx, U_I.qy, pert_I.rho2, pert_I.p2, d);
  const Field divh = div_w(fx, ve, &fy, &ve, lambda, d.weno);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double r2 = pert_I.rho2(i, j);
      H.rho(i, j) -= om * divq(i, j);
      H.qx(i, j) -= om * (dpx(i, j) + r2 * d.bg.phix(i, j));
      if (two) H.qy(i, j) -= om * (dpy(i, j) + r2 * d.bg.phiy(i, j));
      H.E(i, j) -= om * (divh(i, j) + (U_I.qx(i, j) * d.bg.phix(i, j) +
                                       U_I.qy(i, j) * d.bg.phiy(i, j)));
    }
  return H;
}

double compute_dt(const ConservedField& U, const Discretization& d, double cfl) {
  const double lam = max_signal_speed(U, d.prm);
  if (!(lam > 0.0)) throw NumericalStateError("zero signal speed", -1, -1);
  return cfl * d.grid.min_spacing() / lam;
}

ImplicitStageResult implicit_stage(const ConservedField& U_star, const ConservedField& U_E,
                                   double tau, const Discretization& d, double lambda,
                                   StepStats* stats) {
  const Grid& g = U_star.grid();
  const ExplicitTerms ex = explicit_terms(U_E, d, lambda);
  ConservedField S = U_star;
  S.rho.axpy(-tau, ex.mass);
  S.qx.axpy(-tau, ex.momx);
  S.qy.axpy(-tau, ex.momy);
  S.E.axpy(-tau, ex.energy);
  S.theta2.axpy(-tau, ex.theta);
  fill_ghosts(S, d.bc, d.bg);
  if (!d.prm.split()) return {S, Field(), Field()};

  const double e2 = d.prm.eps2();
  const double om = 1.0 - e2;
  const double to = tau * om;
  const bool two = g.dim() == 2;

  const Field vr = diff(S.rho, d.bg.rho0);
  const Field divq = div_w(S.qx, vr, &S.qy, &vr, lambda, d.weno);
  Field rho_sss(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      rho_sss(i, j) = (S.rho(i, j) - to * divq(i, j)) - d.bg.rho0(i, j);
  Field theta(g);
  for (std::size_t k = 0; k < g.size(); ++k)
    theta.data()[k] = d.bg.theta0.data()[k] + e2 * S.theta2.data()[k];

  const EllipticSystem sys = assemble_helmholtz(rho_sss, theta, S.theta2, d.bg, tau, d.prm, d.bc);
  SolveStats st;
  Field rho2 = solve_rho2(sys, d.prm, d.bc, &st, d.elliptic_ws.get());
  Field p2 = p2_from_rho2(rho2, S.theta2, theta, d.bg, d.prm);
  if (stats) {
    stats->elliptic_solves += 1;
    stats->elliptic_iterations += st.iterations;
    stats->elliptic_residual = std::max(stats->elliptic_residual, st.residual);
  }

  ConservedField Q = S;
  {
    const Field dpx = deriv_w(p2, S.qx, Axis::x, lambda, d.weno);
    const Field dpy = two ? deriv_w(p2, S.qy, Axis::y, lambda, d.weno) : Field(g);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        Q.qx(i, j) = S.qx(i, j) - to * (dpx(i, j) + rho2(i, j) * d.bg.phix(i, j));
        if (two) Q.qy(i, j) = S.qy(i, j) - to * (dpy(i, j) + rho2(i, j) * d.bg.phiy(i, j));
      }
  }
  fill_ghosts(Q, d.bc, d.bg);

  const Field divqi = div_w(Q.qx, vr, &Q.qy, &vr, lambda, d.weno);
  const Field fx = enthalpy_flux(Q.qx, Q.qx, Q.qy, rho2, p2, d);
  const Field fy = enthalpy_flux(Q.qy, Q.qx, Q.qy, rho2, p2, d);
  const Field ve = diff(S.E, d.bg.E0);
  const Field divh = div_w(fx, ve, &fy, &ve, lambda, d.weno);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      Q.rho(i, j) = S.rho(i, j) - to * divqi(i, j);
      Q.E(i, j) = S.E(i, j) - to * (divh(i, j) + (Q.qx(i, j) * d.bg.phix(i, j) +
                                                  Q.qy(i, j) * d.bg.phiy(i, j)));
    }
  fill_ghosts(Q, d.bc, d.bg);
  return {std::move(Q), std::move(rho2), std::move(p2)};
}

ConservedField first_order_step(const ConservedField& Un, double dt, const Discretization& d,
                                PerturbationCache& cache, StepStats* stats) {
  const double lambda = max_signal_speed(Un, d.prm);
  if (stats) stats->lambda = lambda;
  ImplicitStageResult r = implicit_stage(Un, Un, dt, d, lambda, stats);
  if (!r.rho2.empty()) {
    cache.rho2 = std::move(r.rho2);
    cache.p2 = std::move(r.p2);
    cache.valid = true;
  }
  return std::move(r.U);
}

ConservedField advance_step(const ConservedField& Un, double dt, const ButcherPair& tab,
                            const Discretization& d, PerturbationCache& cache, StepStats* stats) {
  const Grid& g = Un.grid();
  const int s = tab.s;
  std::vector<ConservedField> H;
  H.reserve(s);
  ImplicitStageResult last{ConservedField(), Field(), Field()};
  bool last_implicit = false;
  for (int i = 0; i < s; ++i) {
    ConservedField UE = Un;
    ConservedField Us = Un;
    bool combined_e = false, combined_s = false;
    for (int j = 0; j < i; ++j) {
      if (tab.at(i, j) != 0.0) {
        UE.axpy(dt * tab.at(i, j), H[j]);
        combined_e = true;
      }
      if (tab.a(i, j) != 0.0) {
        Us.axpy(dt * tab.a(i, j), H[j]);
        combined_s = true;
      }
    }
    if (combined_e) fill_ghosts(UE, d.bc, d.bg);
    if (combined_s) fill_ghosts(Us, d.bc, d.bg);
    const double lambda = max_signal_speed(UE, d.prm);
    if (stats && i == 0) stats->lambda = lambda;
    const double aii = tab.a(i, i);
    if (aii == 0.0) {
      PerturbationField pert{cache.rho2, cache.p2, Us.theta2};
      if (combined_s || !cache.valid || !d.prm.split())
        pert = perturbation_extract(Us, d.bg, d.prm, combined_s ? nullptr : &cache);
      H.push_back(spatial_operator(UE, Us, pert, d, lambda));
      last_implicit = false;
    } else {
      const double tau = dt * aii;
      last = implicit_stage(Us, UE, tau, d, lambda, stats);
      ConservedField h = last.U;
      for (int k = 0; k < ConservedField::kVars; ++k) {
        h.var(k) -= Us.var(k);
        h.var(k) *= 1.0 / tau;
      }
      H.push_back(std::move(h));
      last_implicit = true;
    }
  }
  ConservedField U = Un;
  for (int i = 0; i < s; ++i)
    if (tab.b[i] != 0.0) U.axpy(dt * tab.b[i], H[i]);
  fill_ghosts(U, d.bc, d.bg);

  if (last_implicit) {
    double defect = 0.0;
    for (int k = 0; k < ConservedField::kVars; ++k)
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
          defect = std::max(defect, std::abs(U.var(k)(i, j) - last.U.var(k)(i, j)));
    if (stats) stats->sa_defect = defect;
    if (!last.rho2.empty()) {
      cache.rho2 = std::move(last.rho2);
      cache.p2 = std::move(last.p2);
      cache.valid = true;
    }
  }
  return U;
}

ConservedField unsplit_rhs(const ConservedField& U, const Discretization& d, double lambda) {
  ExplicitTerms t = unsplit_terms(U, d, lambda);
  ConservedField r(U.grid());
  r.rho.axpy(-1.0, t.mass);
  r.qx.axpy(-1.0, t.momx);
  r.qy.axpy(-1.0, t.momy);
  r.E.axpy(-1.0, t.energy);
  r.theta2.axpy(-1.0, t.theta);
  return r;
}

double acoustic_signal_speed(const ConservedField& U, const SimParams& prm) {
  if (!(prm.eps > 0.0)) throw ConfigError("acoustic signal speed requires eps > 0");
  SimParams p = prm;
  const Grid& g = U.grid();
  double lam = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double r = U.rho(i, j);
      const double pr = eos_pressure_raw(r, U.qx(i, j), U.qy(i, j), U.E(i, j), p.eps2(), p.gamma);
      if (!(r > 0.0) || !(pr > 0.0)) throw NumericalStateError("inadmissible state", i, j);
      const double ux = U.qx(i, j) / r, uy = U.qy(i, j) / r;
      lam = std::max(lam, std::sqrt(ux * ux + uy * uy) + std::sqrt(p.gamma * pr / r) / p.eps);
    }
  return lam;
}

}  // namespace allmach
