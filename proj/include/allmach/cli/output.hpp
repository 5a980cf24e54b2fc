#pragma once

#include <map>
#include <string>
#include <vector>

#include "allmach/cli/run.hpp"

namespace allmach {

// CSV columns: x[,y],rho,qx[,qy],E,theta2,p,dtheta with 17 significant digits.
void write_snapshot_csv(const std::string& path, const ConservedField& U, const Discretization& d,
                        const Scenario& sc);
// Legacy VTK structured points (2D grids only).
void write_snapshot_vtk(const std::string& path, const ConservedField& U, const Discretization& d,
                        const Scenario& sc);

// Reads the conservative variables back from a CSV snapshot written on grid g.
ConservedField read_snapshot_csv(const std::string& path, const Grid& g);

void write_diagnostics_csv(const std::string& path, const std::vector<Diagnostics>& rows);
void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);
void write_manifest(const std::string& path, const std::map<std::string, std::string>& entries);

std::string snapshot_name(double t, const std::string& ext);

}  // namespace allmach
