#pragma once

#include <Eigen/SparseCore>
#include <memory>

#include "allmach/boundary/boundary.hpp"

namespace allmach {

// L[rho2] = eps^2 rho2 - beta (lap(a rho2) + div(rho2 grad phi)),
// beta = tau^2 (1 - eps^2)^2, a = gamma p0 theta / (rho0 theta0),
// discretised with fourth-order central differences on interior nodes.
struct EllipticSystem {
  Eigen::SparseMatrix<double, Eigen::RowMajor> A;
  Eigen::VectorXd rhs;
  bool mean_constrained = false;
  bool identity = false;  // beta == 0: L is eps^2 times the identity
  double eps2 = 0.0;
  Grid grid;
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;
};

// Coefficient a on every node; theta must have its ghosts filled.
Field helmholtz_coefficient(const Field& theta, const Background& bg, const SimParams& prm);

// rhs = rho_sss + beta lap(gamma p0 theta2 / theta0). Ghost nodes are
// closed per side: periodic wraps, inflow is Dirichlet from bc.pinned_rho2,
// outflow copies the boundary node, walls and transmissive sides mirror.
EllipticSystem assemble_helmholtz(const Field& rho_sss, const Field& theta, const Field& theta2,
                                  const Background& bg, double tau, const SimParams& prm,
                                  const BoundarySpec& bc);

// Applies L to a field whose ghosts are already set (no matrix involved).
Field apply_helmholtz(const Field& rho2, const Field& theta, const Background& bg, double tau,
                      const SimParams& prm);

// Preconditioner kept between solves on the same grid; refactorised when the
// stored one stops converging quickly.
struct EllipticWorkspace;
std::shared_ptr<EllipticWorkspace> make_elliptic_workspace();

// Returns rho2 with ghosts filled by the same closure as the assembly.
// Throws SolverError when the solve does not converge.
Field solve_rho2(const EllipticSystem& sys, const SimParams& prm, const BoundarySpec& bc,
                 SolveStats* stats = nullptr, EllipticWorkspace* ws = nullptr);

// p2 = gamma p0 / (rho0 theta0) (rho0 theta2 + rho2 theta), every node.
Field p2_from_rho2(const Field& rho2, const Field& theta2, const Field& theta,
                   const Background& bg, const SimParams& prm);

}  // namespace allmach
