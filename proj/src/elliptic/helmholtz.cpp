#include "allmach/elliptic/helmholtz.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

constexpr double kLap[5] = {-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0};
constexpr double kD1[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};
constexpr int kQuickIterations = 60;
constexpr double kIlutDroptol = 1e-4;
constexpr int kIlutFill = 4;

// Where a ghost node along one axis takes its value from.
struct GhostRef {
  int src = 0;             // interior index along the axis
  bool dirichlet = false;  // value comes from pinned data instead
};

GhostRef ghost_ref(int g, int n, BoundaryKind lo, BoundaryKind hi) {
  const bool high = g >= n;
  const BoundaryKind k = high ? hi : lo;
  switch (k) {
    case BoundaryKind::periodic: return {g < 0 ? g + n : g - n, false};
    case BoundaryKind::inflow: return {0, true};
    case BoundaryKind::outflow: return {high ? n - 1 : 0, false};
    case BoundaryKind::transmissive_split:
    case BoundaryKind::inviscid_wall: return {g < 0 ? -1 - g : 2 * n - 1 - g, false};
  }
  return {};
}

double beta_of(double tau, const SimParams& prm) {
  const double om = 1.0 - prm.eps2();
  return tau * tau * om * om;
}

}  // namespace

Field helmholtz_coefficient(const Field& theta, const Background& bg, const SimParams& prm) {
  const Grid& g = theta.grid();
  Field a(g);
  for (std::size_t k = 0; k < g.size(); ++k)
    a.data()[k] = prm.gamma * bg.p0.data()[k] * theta.data()[k] /
                  (bg.rho0.data()[k] * bg.theta0.data()[k]);
  return a;
}

EllipticSystem assemble_helmholtz(const Field& rho_sss, const Field& theta, const Field& theta2,
                                  const Background& bg, double tau, const SimParams& prm,
                                  const BoundarySpec& bc) {
  const Grid& g = rho_sss.grid();
  const int nx = g.nx(), ny = g.ny();
  const int n = nx * ny;
  const double e2 = prm.eps2();
  const double beta = beta_of(tau, prm);
  EllipticSystem sys;
  sys.grid = g;
  sys.eps2 = e2;
  sys.identity = beta == 0.0;
  sys.mean_constrained = e2 == 0.0 && bc.all_periodic(g.dim());
  if (sys.identity && e2 == 0.0) throw ConfigError("helmholtz: singular operator (tau = eps = 0)");

  const Field a = helmholtz_coefficient(theta, bg, prm);
  Field s(g);  // gamma p0 theta2 / theta0
  for (std::size_t k = 0; k < g.size(); ++k)
    s.data()[k] = prm.gamma * bg.p0.data()[k] * theta2.data()[k] / bg.theta0.data()[k];

  const int dim = g.dim();
  const double hx = g.dx(), hy = g.dy();
  const BoundaryKind xlo = bc.at(Side::xlo), xhi = bc.at(Side::xhi);
  const BoundaryKind ylo = bc.at(Side::ylo), yhi = bc.at(Side::yhi);
  const bool has_dirichlet = [&] {
    for (int sd = 0; sd < 2 * dim; ++sd)
      if (bc.kind[sd] == BoundaryKind::inflow) return true;
    return false;
  }();
  if (has_dirichlet && !bc.pinned_rho2) throw ConfigError("helmholtz: inflow side needs rho2 data");

  const int size = sys.mean_constrained ? n + 1 : n;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * (dim == 2 ? 9 : 5) + 2 * n);
  sys.rhs = Eigen::VectorXd::Zero(size);
  auto id = [nx](int i, int j) { return j * nx + i; };

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int row = id(i, j);
      double rhs = rho_sss(i, j);
      trip.emplace_back(row, row, e2);
      for (int axis = 0; axis < dim; ++axis) {
        const bool ax = axis == 0;
        const double h = ax ? hx : hy;
        const int nn = ax ? nx : ny;
        const int pos = ax ? i : j;
        double lap_s = 0.0;
        for (int o = -2; o <= 2; ++o) {
          const int ii = ax ? i + o : i, jj = ax ? j : j + o;
          const double phi_d = ax ? bg.phix(ii, jj) : bg.phiy(ii, jj);
          const double coef = -beta * (kLap[o + 2] * a(ii, jj) / (h * h) + kD1[o + 2] * phi_d / h);
          lap_s += kLap[o + 2] * s(ii, jj) / (h * h);
          const int p = pos + o;
          if (p >= 0 && p < nn) {
            trip.emplace_back(row, id(ii, jj), coef);
            continue;
          }
          const GhostRef gr = ghost_ref(p, nn, ax ? xlo : ylo, ax ? xhi : yhi);
          if (gr.dirichlet) {
            rhs -= coef * (*bc.pinned_rho2)(ii, jj);
          } else {
            trip.emplace_back(row, ax ? id(gr.src, j) : id(i, gr.src), coef);
          }
        }
        rhs += beta * lap_s;
      }
      sys.rhs[row] = rhs;
    }

  if (sys.mean_constrained) {
    double mean = 0.0;
    for (int k = 0; k < n; ++k) mean += sys.rhs[k];
    mean /= n;
    for (int k = 0; k < n; ++k) {
      sys.rhs[k] -= mean;
      trip.emplace_back(k, n, 1.0);
      trip.emplace_back(n, k, 1.0);
    }
  }
  sys.A.resize(size, size);
  sys.A.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

Field apply_helmholtz(const Field& rho2, const Field& theta, const Background& bg, double tau,
                      const SimParams& prm) {
  const Grid& g = rho2.grid();
  const Field a = helmholtz_coefficient(theta, bg, prm);
  const double beta = beta_of(tau, prm);
  Field out(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      double lap = 0.0, div = 0.0;
      for (int o = -2; o <= 2; ++o) {
        lap += kLap[o + 2] * a(i + o, j) * rho2(i + o, j) / (g.dx() * g.dx());
        div += kD1[o + 2] * bg.phix(i + o, j) * rho2(i + o, j) / g.dx();
        if (g.dim() == 2) {
          lap += kLap[o + 2] * a(i, j + o) * rho2(i, j + o) / (g.dy() * g.dy());
          div += kD1[o + 2] * bg.phiy(i, j + o) * rho2(i, j + o) / g.dy();
        }
      }
      out(i, j) = prm.eps2() * rho2(i, j) - beta * (lap + div);
    }
  return out;
}

namespace {

bool diagonally_dominant(const Eigen::SparseMatrix<double, Eigen::RowMajor>& A) {
  for (int r = 0; r < A.outerSize(); ++r) {
    double diag = 0.0, off = 0.0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(A, r); it; ++it)
      (it.col() == r ? diag : off) += std::abs(it.value());
    if (diag < off) return false;
  }
  return true;
}

}  // namespace

struct EllipticWorkspace {
  Eigen::IncompleteLUT<double> ilu;
  Eigen::Index n = 0;
  int fresh_iterations = 0;
  long factorizations = 0;
  bool ready = false;
};

std::shared_ptr<EllipticWorkspace> make_elliptic_workspace() {
  return std::make_shared<EllipticWorkspace>();
}

Field solve_rho2(const EllipticSystem& sys, const SimParams& prm, const BoundarySpec& bc,
                 SolveStats* stats, EllipticWorkspace* ws) {
  const Grid& g = sys.grid;
  const int nx = g.nx(), n = nx * g.ny();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.rhs.size());
  SolveStats st;
  if (sys.identity) {
    for (int k = 0; k < n; ++k) x[k] = sys.eps2 == 1.0 ? sys.rhs[k] : sys.rhs[k] / sys.eps2;
  } else if (sys.rhs.lpNorm<Eigen::Infinity>() == 0.0) {
    // zero solution
  } else if (sys.mean_constrained) {
    Eigen::SparseMatrix<double> Ac = sys.A;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(Ac);
    if (lu.info() != Eigen::Success) throw SolverError("helmholtz: factorisation failed", 0.0, 0);
    x = lu.solve(sys.rhs);
    st.residual = (sys.A * x - sys.rhs).norm() / sys.rhs.norm();
    st.iterations = 1;
    if (!(st.residual <= std::max(prm.solver_tol, 1e-10)))
      throw SolverError("helmholtz: direct solve inaccurate", st.residual, 1);
  } else {
    using Mat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
    bool done = false;
    if (diagonally_dominant(sys.A)) {
      Eigen::BiCGSTAB<Mat, Eigen::DiagonalPreconditioner<double>> quick;
      quick.setTolerance(prm.solver_tol);
      quick.setMaxIterations(std::min(prm.solver_max_iter, kQuickIterations));
      quick.compute(sys.A);
      x = quick.solve(sys.rhs);
      st.iterations = static_cast<int>(quick.iterations());
      st.residual = quick.error();
      done = quick.info() == Eigen::Success && std::isfinite(st.residual);
    }
    if (!done) {
      EllipticWorkspace local;
      EllipticWorkspace& w = ws ? *ws : local;
      auto attempt = [&](int max_iter) {
        Eigen::Index iters = max_iter;
        double tol = prm.solver_tol;
        x.setZero();
        const bool ok = Eigen::internal::bicgstab(sys.A, sys.rhs, x, w.ilu, iters, tol);
        st.iterations += static_cast<int>(iters);
        st.residual = tol;
        return ok && std::isfinite(tol) && tol <= prm.solver_tol;
      };
      bool ok = false;
      if (w.ready && w.n == sys.A.rows())
        ok = attempt(std::min(prm.solver_max_iter, std::max(2 * w.fresh_iterations, 10)));
      if (!ok) {
        w.ilu.setDroptol(kIlutDroptol);
        w.ilu.setFillfactor(kIlutFill);
        w.ilu.compute(sys.A);
        if (w.ilu.info() != Eigen::Success)
          throw SolverError("helmholtz: preconditioner setup failed", 0.0, 0);
        w.n = sys.A.rows();
        w.ready = true;
        ++w.factorizations;
        const int before = st.iterations;
        ok = attempt(prm.solver_max_iter);
        w.fresh_iterations = st.iterations - before;
        if (!ok) throw SolverError("helmholtz: BiCGSTAB did not converge", st.residual, st.iterations);
      }
    }
  }
  if (stats) *stats = st;

  Field rho2(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < nx; ++i) rho2(i, j) = x[j * nx + i];
  fill_scalar_ghosts(rho2, bc, Parity::even, Parity::even, bc.pinned_rho2.get());
  return rho2;
}

Field p2_from_rho2(const Field& rho2, const Field& theta2, const Field& theta,
                   const Background& bg, const SimParams& prm) {
  const Grid& g = rho2.grid();
  Field p2(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r0 = bg.rho0.data()[k], t0 = bg.theta0.data()[k];
    p2.data()[k] = prm.gamma * bg.p0.data()[k] / (r0 * t0) *
                   (r0 * theta2.data()[k] + rho2.data()[k] * theta.data()[k]);
  }
  return p2;
}

}  // namespace allmach
