#pragma once

#include "allmach/boundary/boundary.hpp"
#include "allmach/elliptic/helmholtz.hpp"
#include "allmach/integrator/tableau.hpp"
#include "allmach/stencil/weno.hpp"

namespace allmach {

// Everything the spatial discretisation needs for one grid.
struct Discretization {
  Grid grid;
  SimParams prm;
  WenoConfig weno;
  Background bg;
  BoundarySpec bc;
  std::shared_ptr<EllipticWorkspace> elliptic_ws;

  Discretization(const Grid& g, const SimParams& p, const HydrostaticState& hs,
                 const BoundarySpec& b);
};

struct StepStats {
  int elliptic_solves = 0;
  long elliptic_iterations = 0;
  double elliptic_residual = 0.0;  // worst relative residual
  double sa_defect = 0.0;          // |b-combination - last stage| (max norm)
  double lambda = 0.0;             // signal speed of the first stage
};

// Pressure deviation dp = p - p0 and pressure p = p0 + dp on every node.
// Throws NumericalStateError at the first inadmissible node.
void pressure_split(const ConservedField& U, const Background& bg, const SimParams& prm, Field& p,
                    Field& dp);

// Divergence terms of the explicit part evaluated at U (ghosts filled);
// the explicit increment is minus these.
struct ExplicitTerms {
  Field mass, momx, momy, energy, theta;
};
ExplicitTerms explicit_terms(const ConservedField& U, const Discretization& d, double lambda);

// H(U_E, U_I) with the implicit part evaluated at U_I and its perturbation.
// Both states must have ghosts filled.
ConservedField spatial_operator(const ConservedField& U_E, const ConservedField& U_I,
                                const PerturbationField& pert_I, const Discretization& d,
                                double lambda);

// dt = cfl * min(dx, dy) / lambda(U)
double compute_dt(const ConservedField& U, const Discretization& d, double cfl);

struct ImplicitStageResult {
  ConservedField U;
  Field rho2, p2;  // empty when the stage has no elliptic solve
};

// Sequential implicit update from U_star with explicit state U_E and
// tau = dt * a_ii. The returned state has ghosts filled.
ImplicitStageResult implicit_stage(const ConservedField& U_star, const ConservedField& U_E,
                                   double tau, const Discretization& d, double lambda,
                                   StepStats* stats = nullptr);

// First-order IMEX step. Updates the perturbation cache.
ConservedField first_order_step(const ConservedField& Un, double dt, const Discretization& d,
                                PerturbationCache& cache, StepStats* stats = nullptr);

// One IMEX Runge-Kutta step with the given tableau. Un must have ghosts
// filled; the result has ghosts filled. Updates the perturbation cache.
ConservedField advance_step(const ConservedField& Un, double dt, const ButcherPair& tab,
                            const Discretization& d, PerturbationCache& cache,
                            StepStats* stats = nullptr);

// Right-hand side of the unsplit system (all terms explicit), rewritten so
// that it is a standard Euler system in (rho, q, E/eps^2) with pressure
// p/eps^2 and potential phi/eps^2. Requires eps > 0. Returns dU/dt.
ConservedField unsplit_rhs(const ConservedField& U, const Discretization& d, double lambda);

// max |u| + c / eps, the acoustic signal speed of the unsplit system.
double acoustic_signal_speed(const ConservedField& U, const SimParams& prm);

}  // namespace allmach
