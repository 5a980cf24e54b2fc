#pragma once

#include <array>
#include <vector>

#include "allmach/core/hydrostatic.hpp"
#include "allmach/stencil/weno.hpp"

namespace allmach {

enum class Axis { x, y };

using Mat4 = std::array<std::array<double, 4>, 4>;

// Left/right eigenvectors of the Jacobian of the explicit flux
// (rho un, rho un^2 + p, rho un ut, (E + p) un) in conservative variables
// ordered (rho, qn, qt, E). Columns of R / rows of L are ordered
// (acoustic -, entropy, shear, acoustic +). Well defined at eps = 0.
struct EigenSystem {
  Mat4 L, R;
  std::array<double, 4> lambda;
};

EigenSystem characteristic_system(double rho, double un, double ut, double p, double gamma,
                                  double eps);

// Records the nonlinear weights used at each interface of a line, for the
// flux reconstruction and for the source reconstruction separately.
struct WeightTrace {
  std::vector<Weights3> flux, source;
};

// One line of the characteristic-wise operator. Arrays have n + 2*kGhost
// entries, entry k being node k - kGhost. Components are in the
// (rho, qn, qt, E) order. visc holds the viscosity vector of the
// Lax-Friedrichs split; p0 (optional) gives the well-balancing source
// (0, p0/2, 0, 0) reconstructed with the frozen flux weights, and then dp
// must hold p - p0.
struct CharLine {
  int n = 0;
  const double* rho = nullptr;
  const double* qn = nullptr;
  const double* qt = nullptr;
  const double* E = nullptr;
  const double* p = nullptr;
  std::array<const double*, 4> visc{};
  const double* p0 = nullptr;
  const double* dp = nullptr;
};

// Writes n divergences per component of the flux minus the source part,
// out_flux[c][i] = (G_{i+1/2} - G_{i-1/2}) / h, and of the source in out_src.
// The full flux divergence is their sum.
void characteristic_line(const CharLine& line, double lambda, double gamma, double eps,
                         const WenoConfig& cfg, double h, std::array<double*, 4> out_flux,
                         std::array<double*, 4> out_src, WeightTrace* trace = nullptr);

// Characteristic-wise divergence of the explicit Euler flux with the
// well-balanced source term.
// Components are (rho, qx, qy, E), summed over axes.
struct CwResult {
  std::array<Field, 4> dev;  // divergence of F - P
  std::array<Field, 4> src;  // divergence of P, P = (0, p0, 0, 0) per axis
  Field flux(int c) const {
    Field f = dev[c];
    f += src[c];
    return f;
  }
};

// visc: Lax-Friedrichs viscosity vector (rho, qx, qy, E); p0 and dp may be
// null. Nodes of U must have ghosts filled; p is the pressure on every node.
CwResult div_cw(const ConservedField& U, const Field& p, const Field* dp,
                const std::array<const Field*, 4>& visc, const Field* p0, double lambda,
                double gamma, double eps, const WenoConfig& cfg);

// Well-balanced form: viscosity (rho - rho0, q, E - E0), source from p0.
CwResult div_cw_wb(const ConservedField& U, const Field& p, const Field& dp, const Background& bg,
                   double lambda, double gamma, double eps, const WenoConfig& cfg);

// Component-wise WENO derivative of f along an axis with Lax-Friedrichs
// viscosity v. Interior nodes only are written.
Field deriv_w(const Field& f, const Field& v, Axis axis, double lambda, const WenoConfig& cfg);

// Component-wise divergence dx fx + dy fy (fy ignored in 1D).
Field div_w(const Field& fx, const Field& vx, const Field* fy, const Field* vy, double lambda,
            const WenoConfig& cfg);

// u . grad theta with upwind-biased WENO derivatives; the side follows the
// sign of the local velocity component, the average is used when it is zero.
Field grad_uw(const Field& theta, const Field& ux, const Field& uy, const WenoConfig& cfg);

}  // namespace allmach
