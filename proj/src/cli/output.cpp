#include "allmach/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "allmach/core/eos.hpp"
#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f.precision(17);
  return f;
}

}  // namespace

std::string snapshot_name(double t, const std::string& ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_%.6f.%s", t, ext.c_str());
  return buf;
}

void write_snapshot_csv(const std::string& path, const ConservedField& U, const Discretization& d,
                        const Scenario& sc) {
  const Grid& g = U.grid();
  const bool two = g.dim() == 2;
  const Field dth = dtheta_field(U, d, sc);
  auto f = open_out(path);
  f << (two ? "x,y,rho,qx,qy,E,theta2,p,dtheta\n" : "x,rho,qx,E,theta2,p,dtheta\n");
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double p = eos_pressure_raw(U.rho(i, j), U.qx(i, j), U.qy(i, j), U.E(i, j),
                                        d.prm.eps2(), d.prm.gamma);
      f << g.x(i) << ',';
      if (two) f << g.y(j) << ',';
      f << U.rho(i, j) << ',' << U.qx(i, j) << ',';
      if (two) f << U.qy(i, j) << ',';
      f << U.E(i, j) << ',' << U.theta2(i, j) << ',' << p << ',' << dth(i, j) << '\n';
    }
}

void write_snapshot_vtk(const std::string& path, const ConservedField& U, const Discretization& d,
                        const Scenario& sc) {
  const Grid& g = U.grid();
  if (g.dim() != 2) throw ConfigError("VTK output needs a 2D grid");
  const Field dth = dtheta_field(U, d, sc);
  auto f = open_out(path);
  f << "# vtk DataFile Version 3.0\n" << sc.name << "\nASCII\nDATASET STRUCTURED_POINTS\n";
  f << "DIMENSIONS " << g.nx() << ' ' << g.ny() << " 1\n";
  f << "ORIGIN " << g.x(0) << ' ' << g.y(0) << " 0\n";
  f << "SPACING " << g.dx() << ' ' << g.dy() << " 1\n";
  f << "POINT_DATA " << g.nx() * g.ny() << '\n';
  auto scalar = [&](const char* name, auto value) {
    f << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) f << value(i, j) << '\n';
  };
  scalar("rho", [&](int i, int j) { return U.rho(i, j); });
  scalar("qx", [&](int i, int j) { return U.qx(i, j); });
  scalar("qy", [&](int i, int j) { return U.qy(i, j); });
  scalar("E", [&](int i, int j) { return U.E(i, j); });
  scalar("theta2", [&](int i, int j) { return U.theta2(i, j); });
  scalar("rho_minus_rho0", [&](int i, int j) { return U.rho(i, j) - d.bg.rho0(i, j); });
  scalar("dtheta", [&](int i, int j) { return dth(i, j); });
}

ConservedField read_snapshot_csv(const std::string& path, const Grid& g) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  std::string line;
  std::getline(f, line);
  const bool two = g.dim() == 2;
  ConservedField U(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (!std::getline(f, line)) throw ConfigError("snapshot " + path + " is truncated");
      std::vector<double> v;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
      const std::size_t need = two ? 9 : 7;
      if (v.size() != need) throw ConfigError("snapshot " + path + ": bad column count");
      std::size_t k = two ? 2 : 1;
      U.rho(i, j) = v[k++];
      U.qx(i, j) = v[k++];
      if (two) U.qy(i, j) = v[k++];
      U.E(i, j) = v[k++];
      U.theta2(i, j) = v[k++];
    }
  return U;
}

void write_diagnostics_csv(const std::string& path, const std::vector<Diagnostics>& rows) {
  auto f = open_out(path);
  f << "step,t,dt,lambda,div_max,hydro_dev,pdev_max,dtheta_min,dtheta_max,mass,energy\n";
  for (const auto& r : rows)
    f << r.step << ',' << r.t << ',' << r.dt << ',' << r.lambda << ',' << r.div_max << ','
      << r.hydro_dev << ',' << r.pdev_max << ',' << r.dtheta_min << ',' << r.dtheta_max << ','
      << r.mass << ',' << r.energy << '\n';
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  auto f = open_out(path);
  f << "eps,n,l1_rho,l1_qx,l1_qy,l1_E,order_rho,seconds\n";
  for (const auto& r : rows)
    f << r.eps << ',' << r.n << ',' << r.err.rho << ',' << r.err.qx << ',' << r.err.qy << ','
      << r.err.E << ',' << r.order_rho << ',' << r.seconds << '\n';
}

void write_manifest(const std::string& path, const std::map<std::string, std::string>& entries) {
  auto f = open_out(path);
  for (const auto& [k, v] : entries) f << k << '=' << v << '\n';
}

}  // namespace allmach
