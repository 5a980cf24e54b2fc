#include "allmach/boundary/boundary.hpp"

#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

constexpr int G = kGhost;

// Interior node supplying ghost g (g < 0 or g >= n) by mirroring.
inline int mirror(int g, int n) { return g < 0 ? -1 - g : 2 * n - 1 - g; }
inline int wrap(int g, int n) { return g < 0 ? g + n : g - n; }

struct AxisGeom {
  bool along_x;
  int n;      // interior count on this axis
  int lo, hi; // transverse range to cover (inclusive lo, exclusive hi)
};

template <typename Fn>
void for_ghosts(const AxisGeom& a, bool high, Fn fn) {
  for (int t = a.lo; t < a.hi; ++t)
    for (int m = 0; m < G; ++m) {
      const int g = high ? a.n + m : -1 - m;
      fn(g, t);
    }
}

inline double& at(Field& f, bool along_x, int a, int t) { return along_x ? f(a, t) : f(t, a); }
inline double at(const Field& f, bool along_x, int a, int t) {
  return along_x ? f(a, t) : f(t, a);
}

void fill_side(ConservedField& U, BoundaryKind kind, const AxisGeom& a, bool high,
               const BoundarySpec& bc, const Background& bg) {
  const bool ax = a.along_x;
  Field& qn = ax ? U.qx : U.qy;
  Field& qt = ax ? U.qy : U.qx;
  switch (kind) {
    case BoundaryKind::periodic:
      for_ghosts(a, high, [&](int g, int t) {
        const int s = wrap(g, a.n);
        for (int k = 0; k < ConservedField::kVars; ++k)
          at(U.var(k), ax, g, t) = at(U.var(k), ax, s, t);
      });
      break;
    case BoundaryKind::inflow:
      for_ghosts(a, high, [&](int g, int t) {
        for (int k = 0; k < ConservedField::kVars; ++k)
          at(U.var(k), ax, g, t) = at(bc.pinned->var(k), ax, g, t);
      });
      break;
    case BoundaryKind::outflow:
      for_ghosts(a, high, [&](int g, int t) {
        const int s = high ? a.n - 1 : 0;
        for (int k = 0; k < ConservedField::kVars; ++k)
          at(U.var(k), ax, g, t) = at(U.var(k), ax, s, t);
      });
      break;
    case BoundaryKind::transmissive_split:
    case BoundaryKind::inviscid_wall: {
      const double sign = kind == BoundaryKind::inviscid_wall ? -1.0 : 1.0;
      for_ghosts(a, high, [&](int g, int t) {
        const int s = mirror(g, a.n);
        at(U.rho, ax, g, t) =
            at(bg.rho0, ax, g, t) + (at(U.rho, ax, s, t) - at(bg.rho0, ax, s, t));
        at(U.E, ax, g, t) = at(bg.E0, ax, g, t) + (at(U.E, ax, s, t) - at(bg.E0, ax, s, t));
        at(qn, ax, g, t) = sign * at(qn, ax, s, t);
        at(qt, ax, g, t) = at(qt, ax, s, t);
        at(U.theta2, ax, g, t) = at(U.theta2, ax, s, t);
      });
      break;
    }
  }
}

AxisGeom x_axis(const Grid& g) { return {true, g.nx(), 0, g.ny()}; }
AxisGeom y_axis(const Grid& g) { return {false, g.ny(), -g.gx(), g.nx() + g.gx()}; }

}  // namespace

BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "periodic") return BoundaryKind::periodic;
  if (s == "inflow") return BoundaryKind::inflow;
  if (s == "outflow") return BoundaryKind::outflow;
  if (s == "transmissive_split") return BoundaryKind::transmissive_split;
  if (s == "inviscid_wall" || s == "wall") return BoundaryKind::inviscid_wall;
  throw ConfigError("unknown boundary kind '" + s + "'");
}

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::inflow: return "inflow";
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::transmissive_split: return "transmissive_split";
    case BoundaryKind::inviscid_wall: return "inviscid_wall";
  }
  return "?";
}

bool BoundarySpec::all_periodic(int dim) const {
  const int sides = dim == 2 ? 4 : 2;
  for (int s = 0; s < sides; ++s)
    if (kind[s] != BoundaryKind::periodic) return false;
  return true;
}

void BoundarySpec::validate(const Grid& g) const {
  const int axes = g.dim();
  for (int a = 0; a < axes; ++a) {
    const bool plo = kind[2 * a] == BoundaryKind::periodic;
    const bool phi = kind[2 * a + 1] == BoundaryKind::periodic;
    if (plo != phi) throw ConfigError("boundary: periodic sides must come in pairs");
    const int n = a == 0 ? g.nx() : g.ny();
    if (n < G) throw ConfigError("boundary: need at least 3 interior nodes per axis");
    for (int s = 2 * a; s < 2 * a + 2; ++s)
      if (kind[s] == BoundaryKind::inflow && (!pinned || !(pinned->grid() == g)))
        throw ConfigError("boundary: inflow side without pinned state for this grid");
  }
}

void fill_ghosts(ConservedField& U, const BoundarySpec& bc, const Background& bg) {
  const Grid& g = U.grid();
  fill_side(U, bc.at(Side::xlo), x_axis(g), false, bc, bg);
  fill_side(U, bc.at(Side::xhi), x_axis(g), true, bc, bg);
  if (g.dim() == 2) {
    fill_side(U, bc.at(Side::ylo), y_axis(g), false, bc, bg);
    fill_side(U, bc.at(Side::yhi), y_axis(g), true, bc, bg);
  }
}

void fill_scalar_ghosts(Field& f, const BoundarySpec& bc, Parity parity_x, Parity parity_y,
                        const Field* pinned) {
  const Grid& g = f.grid();
  auto side = [&](BoundaryKind kind, const AxisGeom& a, bool high, Parity par) {
    const bool ax = a.along_x;
    const double sign = par == Parity::odd ? -1.0 : 1.0;
    for_ghosts(a, high, [&](int gi, int t) {
      double v = 0.0;
      switch (kind) {
        case BoundaryKind::periodic: v = at(f, ax, wrap(gi, a.n), t); break;
        case BoundaryKind::inflow:
          if (!pinned) throw ConfigError("fill_scalar_ghosts: inflow needs pinned values");
          v = at(*pinned, ax, gi, t);
          break;
        case BoundaryKind::outflow: v = at(f, ax, high ? a.n - 1 : 0, t); break;
        case BoundaryKind::transmissive_split:
        case BoundaryKind::inviscid_wall: v = sign * at(f, ax, mirror(gi, a.n), t); break;
      }
      at(f, ax, gi, t) = v;
    });
  };
  side(bc.at(Side::xlo), x_axis(g), false, parity_x);
  side(bc.at(Side::xhi), x_axis(g), true, parity_x);
  if (g.dim() == 2) {
    side(bc.at(Side::ylo), y_axis(g), false, parity_y);
    side(bc.at(Side::yhi), y_axis(g), true, parity_y);
  }
}

void wrap_periodic_background(Background& bg, const BoundarySpec& bc) {
  const Grid& g = bg.rho0.grid();
  for (Field* f : {&bg.rho0, &bg.p0, &bg.E0, &bg.theta0, &bg.phix, &bg.phiy, &bg.dtheta0x,
                   &bg.dtheta0y}) {
    auto side = [&](Side s, const AxisGeom& a, bool high) {
      if (bc.at(s) != BoundaryKind::periodic) return;
      for_ghosts(a, high, [&](int gi, int t) { at(*f, a.along_x, gi, t) = at(*f, a.along_x, wrap(gi, a.n), t); });
    };
    side(Side::xlo, x_axis(g), false);
    side(Side::xhi, x_axis(g), true);
    if (g.dim() == 2) {
      side(Side::ylo, y_axis(g), false);
      side(Side::yhi, y_axis(g), true);
    }
  }
}

}  // namespace allmach
