#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "allmach/cli/output.hpp"
#include "allmach/cli/run.hpp"
#include "allmach/core/errors.hpp"

using namespace allmach;

namespace {

struct RunArgs {
  std::string config, case_name, scheme = "imex3", weights, out, format = "csv", tableau;
  int nx = 0, ny = 0, snapshots = 0;
  double eps = -1.0, cfl = -1.0, t_end = -1.0, solver_tol = -1.0;
  long max_steps = -1;
  bool perturbed = false;
};

std::string strip_section(const std::string& key) {
  const auto dot = key.rfind('.');
  return dot == std::string::npos ? key : key.substr(dot + 1);
}

// Values from the config file fill in whatever was not given on the command line.
void apply_config(RunArgs& a, const CLI::App& app) {
  if (a.config.empty()) return;
  auto given = [&](const char* opt) { return app.count(opt) > 0; };
  for (const auto& [full, v] : load_config_file(a.config)) {
    const std::string k = strip_section(full);
    try {
      if (k == "case") { if (!given("--case")) a.case_name = v; }
      else if (k == "scheme") { if (!given("--scheme")) a.scheme = v; }
      else if (k == "nx") { if (!given("--nx")) a.nx = std::stoi(v); }
      else if (k == "ny") { if (!given("--ny")) a.ny = std::stoi(v); }
      else if (k == "eps") { if (!given("--eps")) a.eps = std::stod(v); }
      else if (k == "cfl") { if (!given("--cfl")) a.cfl = std::stod(v); }
      else if (k == "t_end") { if (!given("--t-end")) a.t_end = std::stod(v); }
      else if (k == "weights") { if (!given("--weights")) a.weights = v; }
      else if (k == "out") { if (!given("--out")) a.out = v; }
      else if (k == "format") { if (!given("--format")) a.format = v; }
      else if (k == "snapshots") { if (!given("--snapshots")) a.snapshots = std::stoi(v); }
      else if (k == "max_steps") { if (!given("--max-steps")) a.max_steps = std::stol(v); }
      else if (k == "solver_tol") { if (!given("--solver-tol")) a.solver_tol = std::stod(v); }
      else if (k == "tableau") { if (!given("--tableau")) a.tableau = v; }
      else if (k == "perturbed") { if (!given("--perturbed")) a.perturbed = (v == "true" || v == "1"); }
      else throw ConfigError("unknown config key '" + full + "'");
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ConfigError*>(&e)) throw;
      throw ConfigError("config key '" + full + "': bad value '" + v + "'");
    }
  }
}

WeightsMode parse_weights(const std::string& s) {
  if (s == "linear") return WeightsMode::linear;
  if (s == "nonlinear") return WeightsMode::nonlinear;
  throw ConfigError("weights must be linear or nonlinear, got '" + s + "'");
}

int cmd_run(const RunArgs& a) {
  if (a.case_name.empty()) throw ConfigError("--case is required");
  CaseOverrides ov;
  if (a.nx > 0) ov.nx = a.nx;
  if (a.ny > 0) ov.ny = a.ny;
  if (a.eps >= 0.0) ov.eps = a.eps;
  if (a.cfl > 0.0) ov.cfl = a.cfl;
  if (a.t_end >= 0.0) ov.t_end = a.t_end;
  if (!a.weights.empty()) ov.weights = parse_weights(a.weights);
  ov.perturbed = a.perturbed;
  Scenario sc = build_case(a.case_name, ov);
  if (a.solver_tol > 0.0) sc.prm.solver_tol = a.solver_tol;
  sc.prm.validate();

  RunOptions ro;
  ro.scheme = parse_scheme(a.scheme);
  ro.out_dir = a.out;
  ro.format = a.format;
  ro.snapshots = a.snapshots;
  ro.max_steps = a.max_steps;
  ro.tableau_path = a.tableau;
  const RunResult r = run_simulation(sc, ro);
  const Diagnostics& last = r.history.back();
  std::printf("%s %s: t=%.6g steps=%ld dt0=%.4e solves=%ld iters=%ld wall=%.2fs\n",
              sc.name.c_str(), a.scheme.c_str(), r.t, r.steps, r.dt_first, r.elliptic_solves,
              r.elliptic_iterations, r.seconds);
  std::printf("  hydro_dev=%.3e pdev=%.3e div=%.3e dtheta=[%.4g, %.4g]\n", last.hydro_dev,
              last.pdev_max, last.div_max, last.dtheta_min, last.dtheta_max);
  return 0;
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      if constexpr (std::is_same_v<T, int>) out.push_back(std::stoi(item));
      else out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty list '" + s + "'");
  return out;
}

int cmd_convergence(const std::string& case_name, const std::string& eps, const std::string& ns,
                    const std::string& scheme, const std::string& out, double t_end) {
  CaseOverrides base;
  if (t_end >= 0.0) base.t_end = t_end;
  const auto rows = run_convergence(case_name, parse_list<double>(eps), parse_list<int>(ns),
                                    parse_scheme(scheme), base);
  std::printf("%10s %6s %12s %12s %12s %12s %7s\n", "eps", "N", "L1(rho)", "L1(qx)", "L1(qy)",
              "L1(E)", "order");
  for (const auto& r : rows)
    std::printf("%10.3g %6d %12.4e %12.4e %12.4e %12.4e %7.2f\n", r.eps, r.n, r.err.rho, r.err.qx,
                r.err.qy, r.err.E, r.order_rho);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    write_convergence_csv(out + "/convergence.csv", rows);
  }
  return 0;
}

// Mean of a quartic over [a, b], from its antiderivative.
double quartic_mean(double a, double b) {
  auto P = [](double x) { return x * x * x * x * x / 5.0 - x * x * x / 3.0 + 0.5 * x * x + 0.25 * x; };
  return (P(b) - P(a)) / (b - a);
}

int cmd_validate() {
  int failures = 0;
  auto report = [&](bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++failures;
  };

  const std::string dir = ALLMACH_DATA_DIR;
  for (const auto& [file, order, builtin] :
       {std::tuple{"imex1.tab", 1, tableau_imex1()}, std::tuple{"ars443.tab", 3, tableau_ars443()}}) {
    const std::string path = dir + "/" + file;
    try {
      const ButcherPair t = load_tableau(path);
      const TableauReport rep = validate_tableau(t, order);
      report(rep.ok(), std::string("tableau ") + file + " order " + std::to_string(order) +
                           (rep.ok() ? "" : ": " + rep.violations.front()));
      report(t.A == builtin.A && t.At == builtin.At && t.b == builtin.b && t.bt == builtin.bt,
             std::string("tableau ") + file + " matches built-in");
    } catch (const std::exception& e) {
      report(false, std::string("tableau ") + file + ": " + e.what());
    }
  }

  {
    const double h = 0.1;
    double err = 0.0;
    WenoConfig lin{1e-6, WeightsMode::linear};
    for (int i = -5; i <= 5; ++i) {
      double v[5];
      for (int k = 0; k < 5; ++k) {
        const double a = (i + k - 2 - 0.5) * h;
        v[k] = quartic_mean(a, a + h);
      }
      const double xf = (i + 0.5) * h;
      const double exact = xf * xf * xf * xf - xf * xf + xf + 0.25;
      err = std::max(err, std::abs(weno5_apply(weno5_weights(v, lin), v) - exact));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "WENO5 linear weights exact on quartics (err %.2e)", err);
    report(err <= 1e-12, buf);
  }

  for (const auto& name : list_cases()) {
    try {
      const Scenario sc = build_case(name);
      const double res = hydrostatic_residual(sc.hs, make_grid(sc));
      char buf[128];
      std::snprintf(buf, sizeof buf, "hydrostatic residual %-10s %.2e", name.c_str(), res);
      report(res <= 1e-12, buf);
    } catch (const std::exception& e) {
      report(false, name + ": " + e.what());
    }
  }
  std::printf("%s\n", failures == 0 ? "validate: all checks passed" : "validate: FAILED");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-Mach Euler solver with gravity"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "advance one case to its end time");
  run->add_option("--config", ra.config, "key=value config file (flags take precedence)");
  run->add_option("--case", ra.case_name, "case name (see list-cases)");
  run->add_option("--scheme", ra.scheme, "imex1 | imex3 | explicit_rk3");
  run->add_option("--nx", ra.nx);
  run->add_option("--ny", ra.ny);
  run->add_option("--eps", ra.eps, "global Mach number");
  run->add_option("--cfl", ra.cfl);
  run->add_option("--t-end", ra.t_end);
  run->add_option("--weights", ra.weights, "linear | nonlinear");
  run->add_flag("--perturbed", ra.perturbed, "isothermal: add the pressure pulse");
  run->add_option("--out", ra.out, "output directory");
  run->add_option("--format", ra.format, "csv | vtk | both");
  run->add_option("--snapshots", ra.snapshots, "intermediate snapshots");
  run->add_option("--max-steps", ra.max_steps);
  run->add_option("--solver-tol", ra.solver_tol);
  run->add_option("--tableau", ra.tableau, "tableau file overriding the built-in one");

  std::string cv_case = "accuracy1d", cv_eps = "1", cv_n = "16,32,64,128,256", cv_scheme = "imex3",
              cv_out;
  double cv_t = -1.0;
  auto* conv = app.add_subcommand("convergence", "error table against the exact solution");
  conv->add_option("--case", cv_case);
  conv->add_option("--eps", cv_eps, "comma-separated list");
  conv->add_option("--n", cv_n, "comma-separated list of grid sizes");
  conv->add_option("--scheme", cv_scheme);
  conv->add_option("--t-end", cv_t);
  conv->add_option("--out", cv_out, "directory for convergence.csv");

  auto* lc = app.add_subcommand("list-cases", "print the available cases");
  auto* val = app.add_subcommand("validate", "tableau, WENO and hydrostatic self-checks");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) {
      apply_config(ra, *run);
      return cmd_run(ra);
    }
    if (*conv) return cmd_convergence(cv_case, cv_eps, cv_n, cv_scheme, cv_out, cv_t);
    if (*lc) {
      for (const auto& n : list_cases()) std::printf("%-12s %s\n", n.c_str(), build_case(n).description.c_str());
      return 0;
    }
    if (*val) return cmd_validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
