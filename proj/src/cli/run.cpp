#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "allmach/cli/output.hpp"
#include "allmach/cli/run.hpp"
#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_outputs(const std::string& dir, const std::string& format, const ConservedField& U,
                   const Discretization& d, const Scenario& sc, double t) {
  const bool vtk = (format == "vtk" || format == "both") && d.grid.dim() == 2;
  const bool csv = format == "csv" || format == "both" || !vtk;
  if (csv) write_snapshot_csv(dir + "/" + snapshot_name(t, "csv"), U, d, sc);
  if (vtk) write_snapshot_vtk(dir + "/" + snapshot_name(t, "vtk"), U, d, sc);
}

}  // namespace

RunResult run_simulation(const Scenario& sc, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const Grid g = make_grid(sc);
  const Discretization d = make_discretization(sc, g);
  ConservedField U = initial_state(sc, g);
  fill_ghosts(U, d.bc, d.bg);
  PerturbationCache cache = initial_cache(sc, d, U);

  ButcherPair tab;
  if (opt.scheme != Scheme::explicit_rk3) {
    tab = !opt.tableau_path.empty() ? load_tableau(opt.tableau_path)
                                    : tableau_by_name(to_string(opt.scheme));
    const TableauReport rep = validate_tableau(tab, opt.scheme == Scheme::imex1 ? 1 : 3);
    if (!rep.ok()) throw ConfigError("tableau '" + tab.name + "' invalid: " + rep.violations.front());
  } else if (!(sc.prm.eps > 0.0)) {
    throw ConfigError("explicit_rk3 requires eps > 0");
  }

  const bool files = !opt.out_dir.empty();
  if (files) std::filesystem::create_directories(opt.out_dir);

  RunResult res;
  Diagnostics d0 = compute_diagnostics(U, d, sc);
  res.history.push_back(d0);
  if (files) write_outputs(opt.out_dir, opt.format, U, d, sc, 0.0);
  const double T = sc.t_end;
  double next_snap = opt.snapshots > 0 ? T / (opt.snapshots + 1) : 2.0 * T + 1.0;

  double t = 0.0;
  long step = 0;
  while (t < T && (opt.max_steps < 0 || step < opt.max_steps)) {
    double dt = opt.scheme == Scheme::explicit_rk3 ? reference_dt(U, d, sc.prm.cfl)
                                                   : compute_dt(U, d, sc.prm.cfl);
    if (t + dt > T) dt = T - t;
    if (step == 0) res.dt_first = dt;
    StepStats st;
    Diagnostics dg;
    try {
      ConservedField next = opt.scheme == Scheme::explicit_rk3
                                ? reference_explicit_step(U, dt, d)
                                : advance_step(U, dt, tab, d, cache, &st);
      dg = compute_diagnostics(next, d, sc);
      if (!dg.finite)
        throw NumericalStateError("non-finite or inadmissible state after step " +
                                      std::to_string(step + 1), -1, -1);
      U = std::move(next);
    } catch (const std::exception&) {
      if (files) {
        write_outputs(opt.out_dir, opt.format, U, d, sc, t);
        write_diagnostics_csv(opt.out_dir + "/diagnostics.csv", res.history);
      }
      throw;
    }
    t = (t + dt >= T) ? T : t + dt;
    ++step;
    res.elliptic_solves += st.elliptic_solves;
    res.elliptic_iterations += st.elliptic_iterations;
    res.max_sa_defect = std::max(res.max_sa_defect, st.sa_defect);
    dg.step = step;
    dg.t = t;
    dg.dt = dt;
    res.history.push_back(dg);
    if (opt.on_step) opt.on_step(U, dg);
    if (files && t >= next_snap && t < T) {
      write_outputs(opt.out_dir, opt.format, U, d, sc, t);
      next_snap += T / (opt.snapshots + 1);
    }
  }
  res.t = t;
  res.steps = step;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (files) {
    write_outputs(opt.out_dir, opt.format, U, d, sc, t);
    write_diagnostics_csv(opt.out_dir + "/diagnostics.csv", res.history);
    write_manifest(opt.out_dir + "/manifest.txt",
                   {{"case", sc.name},
                    {"scheme", to_string(opt.scheme)},
                    {"nx", std::to_string(g.nx())},
                    {"ny", std::to_string(g.ny())},
                    {"eps", num(sc.prm.eps)},
                    {"gamma", num(sc.prm.gamma)},
                    {"cfl", num(sc.prm.cfl)},
                    {"weights", sc.prm.weights == WeightsMode::linear ? "linear" : "nonlinear"},
                    {"weno_eps", num(sc.prm.weno_eps)},
                    {"solver_tol", num(sc.prm.solver_tol)},
                    {"solver_max_iter", std::to_string(sc.prm.solver_max_iter)},
                    {"perturbed", sc.perturbed ? "true" : "false"},
                    {"tableau", opt.scheme == Scheme::explicit_rk3 ? "ssprk3" : tab.name},
                    {"tableau_path", opt.tableau_path},
                    {"max_steps", std::to_string(opt.max_steps)},
                    {"snapshots", std::to_string(opt.snapshots)},
                    {"format", opt.format},
                    {"t_end", num(T)},
                    {"t_final", num(t)},
                    {"steps", std::to_string(step)},
                    {"elliptic_solves", std::to_string(res.elliptic_solves)},
                    {"elliptic_iterations", std::to_string(res.elliptic_iterations)},
                    {"wall_seconds", num(res.seconds)}});
  }
  res.U = std::move(U);
  return res;
}

std::vector<ConvergenceRow> run_convergence(const std::string& case_name,
                                            const std::vector<double>& eps_list,
                                            const std::vector<int>& n_list, Scheme scheme,
                                            const CaseOverrides& base) {
  std::vector<ConvergenceRow> rows;
  for (double eps : eps_list) {
    double prev = 0.0;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      CaseOverrides o = base;
      o.eps = eps;
      o.nx = n_list[k];
      Scenario sc = build_case(case_name, o);
      if (sc.dim == 2) sc.ny = n_list[k];
      if (!sc.steady) throw ConfigError("case '" + case_name + "' has no exact solution");
      RunOptions ro;
      ro.scheme = scheme;
      const RunResult r = run_simulation(sc, ro);
      const auto exact = exact_solution(sc, r.U.grid(), r.t);
      ConvergenceRow row;
      row.eps = eps;
      row.n = n_list[k];
      row.err = l1_error(r.U, *exact);
      row.order_rho = k == 0 ? 0.0 : observed_order(prev, row.err.rho);
      row.seconds = r.seconds;
      prev = row.err.rho;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace allmach
