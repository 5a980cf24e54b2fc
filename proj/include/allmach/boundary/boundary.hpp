#pragma once

#include <array>
#include <memory>
#include <string>

#include "allmach/core/hydrostatic.hpp"

namespace allmach {

enum class BoundaryKind { periodic, inflow, outflow, transmissive_split, inviscid_wall };
enum class Side { xlo = 0, xhi = 1, ylo = 2, yhi = 3 };

BoundaryKind parse_boundary_kind(const std::string& s);
std::string to_string(BoundaryKind k);

// Inflow sides copy their ghosts from `pinned`, a state evaluated on every
// node of the grid; `pinned_rho2` is the matching second-order density used
// as Dirichlet data by the elliptic solve.
struct BoundarySpec {
  std::array<BoundaryKind, 4> kind{BoundaryKind::periodic, BoundaryKind::periodic,
                                   BoundaryKind::periodic, BoundaryKind::periodic};
  std::shared_ptr<const ConservedField> pinned;
  std::shared_ptr<const Field> pinned_rho2;

  BoundaryKind at(Side s) const { return kind[static_cast<int>(s)]; }
  bool all_periodic(int dim) const;
  void validate(const Grid& g) const;
};

// Fill ghost layers: x sides first, then y sides over the full x range.
void fill_ghosts(ConservedField& U, const BoundarySpec& bc, const Background& bg);

enum class Parity { even, odd };

// Ghost fill for a single scalar. Periodic wraps, walls and transmissive
// sides mirror with the given parity, outflow copies the boundary node and
// inflow copies from `pinned` (required then).
void fill_scalar_ghosts(Field& f, const BoundarySpec& bc, Parity parity_x, Parity parity_y,
                        const Field* pinned);

// Overwrite the background ghosts on periodic sides with wrapped interior
// values so that fluxes across the seam agree from both ends.
void wrap_periodic_background(Background& bg, const BoundarySpec& bc);

}  // namespace allmach
