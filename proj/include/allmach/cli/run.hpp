#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "allmach/cases/diagnostics.hpp"

namespace allmach {

enum class Scheme { imex1, imex3, explicit_rk3 };

Scheme parse_scheme(const std::string& s);
std::string to_string(Scheme s);

struct RunOptions {
  Scheme scheme = Scheme::imex3;
  std::string out_dir;              // empty: no files
  std::string format = "csv";       // csv | vtk | both (2D only for vtk)
  int snapshots = 0;                // extra snapshots evenly spaced in time
  long max_steps = -1;              // stop after this many steps (negative: no limit)
  std::string tableau_path;         // overrides the built-in tableau when set
  // called after every step with the current state
  std::function<void(const ConservedField&, const Diagnostics&)> on_step;
};

struct RunResult {
  ConservedField U;
  double t = 0.0;
  long steps = 0;
  double seconds = 0.0;
  double dt_first = 0.0;
  std::vector<Diagnostics> history;
  long elliptic_solves = 0;
  long elliptic_iterations = 0;
  double max_sa_defect = 0.0;
};

RunResult run_simulation(const Scenario& sc, const RunOptions& opt);

// One SSP-RK3 step of the unsplit explicit scheme (independent reference).
// Requires eps > 0. U must have ghosts filled; the result has ghosts filled.
ConservedField reference_explicit_step(const ConservedField& U, double dt, const Discretization& d);

// dt = cfl * min(dx, dy) / max(|u| + c / eps)
double reference_dt(const ConservedField& U, const Discretization& d, double cfl);

std::vector<ConvergenceRow> run_convergence(const std::string& case_name,
                                            const std::vector<double>& eps_list,
                                            const std::vector<int>& n_list, Scheme scheme,
                                            const CaseOverrides& base = {});

// key=value configuration with optional [section] headers; keys are
// returned as "section.key" (or "key" before any section).
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

}  // namespace allmach
