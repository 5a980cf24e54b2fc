#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "allmach/cli/output.hpp"
#include "allmach/cli/run.hpp"
#include "allmach/core/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace allmach;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("allmach_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config text supports sections and comments") {
  const auto kv = parse_config_text("# run\ncase = vortex\n[grid]\nnx=40 ; inline\n\n[time]\n t_end = 0.5\n");
  CHECK(kv.at("case") == "vortex");
  CHECK(kv.at("grid.nx") == "40");
  CHECK(kv.at("time.t_end") == "0.5");
  CHECK(kv.size() == 3);
  CHECK_THROWS_AS(parse_config_text("novalue\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[open\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(" = 3\n"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/allmach.cfg"), ConfigError);
}

TEST_CASE("scheme names round trip") {
  for (Scheme s : {Scheme::imex1, Scheme::imex3, Scheme::explicit_rk3})
    CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("rk4"), ConfigError);
  CHECK(snapshot_name(0.25, "csv") == "snapshot_0.250000.csv");
}

TEST_CASE("csv snapshots round trip bitwise") {
  for (const char* name : {"accuracy1d", "bubble"}) {
    CaseOverrides ov;
    ov.nx = 20;
    const Scenario sc = build_case(name, ov);
    const Grid g = make_grid(sc);
    const Discretization d = make_discretization(sc, g);
    ConservedField U = initial_state(sc, g);
    fill_ghosts(U, d.bc, d.bg);
    const fs::path dir = scratch(std::string("csv_") + name);
    fs::create_directories(dir);
    const std::string path = (dir / "s.csv").string();
    write_snapshot_csv(path, U, d, sc);
    const ConservedField R = read_snapshot_csv(path, g);
    for (int k = 0; k < ConservedField::kVars; ++k)
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) CHECK(R.var(k)(i, j) == U.var(k)(i, j));
    fs::remove_all(dir);
  }
}

TEST_CASE("zero end time writes the initial condition and a manifest") {
  CaseOverrides ov;
  ov.nx = 16;
  ov.t_end = 0.0;
  const Scenario sc = build_case("accuracy2d", ov);
  const fs::path dir = scratch("t0");
  RunOptions ro;
  ro.out_dir = dir.string();
  ro.format = "both";
  const RunResult r = run_simulation(sc, ro);
  CHECK(r.steps == 0);
  CHECK(r.t == 0.0);
  const Grid g = make_grid(sc);
  const ConservedField U0 = initial_state(sc, g);
  for (int k = 0; k < ConservedField::kVars; ++k) CHECK(oracle::max_diff(r.U.var(k), U0.var(k)) == 0.0);
  CHECK(fs::exists(dir / "snapshot_0.000000.csv"));
  CHECK(fs::exists(dir / "snapshot_0.000000.vtk"));
  const ConservedField R = read_snapshot_csv((dir / "snapshot_0.000000.csv").string(), g);
  CHECK(oracle::max_diff(R.rho, U0.rho) == 0.0);
  const std::string man = slurp(dir / "manifest.txt");
  for (const char* key : {"case=accuracy2d", "scheme=imex3", "nx=16", "ny=16", "steps=0", "t_final=0"})
    CHECK(man.find(key) != std::string::npos);
  const std::string diag = slurp(dir / "diagnostics.csv");
  CHECK(diag.rfind("step,t,dt,lambda,div_max", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("runs stop at the step limit and write intermediate snapshots") {
  CaseOverrides ov;
  ov.nx = 32;
  ov.t_end = 0.02;
  const Scenario sc = build_case("accuracy1d", ov);
  const fs::path dir = scratch("snaps");
  RunOptions ro;
  ro.out_dir = dir.string();
  ro.snapshots = 1;
  ro.scheme = Scheme::imex1;
  long seen = 0;
  ro.on_step = [&](const ConservedField&, const Diagnostics& d) { seen = d.step; };
  const RunResult r = run_simulation(sc, ro);
  CHECK(r.t == 0.02);
  CHECK(seen == r.steps);
  CHECK(r.history.size() == static_cast<std::size_t>(r.steps + 1));
  int csv = 0;
  for (const auto& e : fs::directory_iterator(dir)) csv += e.path().extension() == ".csv";
  CHECK(csv == 4);

  ro.out_dir.clear();
  ro.max_steps = 2;
  CHECK(run_simulation(sc, ro).steps == 2);
  fs::remove_all(dir);
}

TEST_CASE("invalid runs are rejected") {
  CaseOverrides ov;
  ov.eps = 0.0;
  const Scenario sc = build_case("accuracy1d", ov);
  RunOptions ro;
  ro.scheme = Scheme::explicit_rk3;
  CHECK_THROWS_AS(run_simulation(sc, ro), ConfigError);
  ro.scheme = Scheme::imex3;
  ro.tableau_path = std::string(ALLMACH_DATA_DIR) + "/imex1.tab";
  CHECK_THROWS_AS(run_simulation(sc, ro), ConfigError);
  CHECK_THROWS_AS(run_convergence("bubble", {0.01}, {16}, Scheme::imex3), ConfigError);

  const Scenario one = build_case("accuracy1d");
  const Grid g = make_grid(one);
  const Discretization d = make_discretization(one, g);
  CHECK_THROWS_AS(write_snapshot_vtk("/tmp/x.vtk", initial_state(one, g), d, one), ConfigError);
}

TEST_CASE("convergence table has one row per grid with observed orders") {
  CaseOverrides base;
  base.t_end = 0.01;
  const auto rows = run_convergence("accuracy1d", {0.5}, {32, 64}, Scheme::imex3, base);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].order_rho == 0.0);
  CHECK(rows[1].order_rho == doctest::Approx(observed_order(rows[0].err.rho, rows[1].err.rho)));
  CHECK(rows[1].err.rho < rows[0].err.rho);
}

TEST_CASE("a four-node 1D snapshot has a header and four rows") {
  CaseOverrides ov;
  ov.nx = 4;
  const Scenario sc = build_case("accuracy1d", ov);
  const Grid g = make_grid(sc);
  const Discretization d = make_discretization(sc, g);
  const fs::path dir = scratch("rows");
  fs::create_directories(dir);
  write_snapshot_csv((dir / "s.csv").string(), initial_state(sc, g), d, sc);
  std::ifstream f(dir / "s.csv");
  std::string line;
  int rows = 0;
  std::getline(f, line);
  CHECK(line == "x,rho,qx,E,theta2,p,dtheta");
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 4);
  fs::remove_all(dir);
}

TEST_CASE("the explicit reference keeps the hydrostatic state") {
  for (double eps : {0.9, 0.3}) {
    CaseOverrides ov;
    ov.eps = eps;
    ov.nx = 24;
    const Scenario sc = build_case("isothermal", ov);
    const Grid g = make_grid(sc);
    const Discretization d = make_discretization(sc, g);
    ConservedField U = initial_state(sc, g);
    fill_ghosts(U, d.bc, d.bg);
    const ConservedField V = reference_explicit_step(U, reference_dt(U, d, 0.4), d);
    for (int k = 0; k < 4; ++k) CHECK(oracle::max_diff(U.var(k), V.var(k)) <= 1e-13);
  }
}

TEST_CASE("the manifest records what is needed to repeat a run") {
  CaseOverrides ov;
  ov.perturbed = true;
  ov.nx = 12;
  const Scenario sc = build_case("isothermal", ov);
  const fs::path dir = scratch("manifest");
  RunOptions ro;
  ro.out_dir = dir.string();
  ro.max_steps = 1;
  run_simulation(sc, ro);
  std::map<std::string, std::string> kv;
  std::ifstream f(dir / "manifest.txt");
  for (std::string line; std::getline(f, line);) {
    const auto eq = line.find('=');
    REQUIRE(eq != std::string::npos);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  for (const char* key : {"case", "scheme", "nx", "ny", "eps", "gamma", "cfl", "weights", "weno_eps",
                          "solver_tol", "perturbed", "tableau", "t_end", "steps", "wall_seconds",
                          "elliptic_solves", "elliptic_iterations"})
    CHECK(kv.count(key) == 1);
  CHECK(kv["perturbed"] == "true");
  CHECK(kv["tableau"] == "ars443");
  CHECK(kv["steps"] == "1");
  fs::remove_all(dir);
}
