#include "allmach/core/state.hpp"

#include <cmath>

#include "allmach/core/errors.hpp"

namespace allmach {

void SimParams::validate() const {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ConfigError("eps must be finite and >= 0");
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (!(weno_eps > 0.0)) throw ConfigError("weno_eps must be positive");
  if (!(solver_tol > 0.0) || solver_max_iter < 1)
    throw ConfigError("solver tolerance and iteration limit must be positive");
}

Field& ConservedField::var(int k) {
  switch (k) {
    case 0: return rho;
    case 1: return qx;
    case 2: return qy;
    case 3: return E;
    case 4: return theta2;
  }
  throw std::out_of_range("ConservedField::var");
}

const Field& ConservedField::var(int k) const {
  return const_cast<ConservedField*>(this)->var(k);
}

void ConservedField::axpy(double a, const ConservedField& x) {
  for (int k = 0; k < kVars; ++k) var(k).axpy(a, x.var(k));
}

std::array<double, 2> velocity(const ConservedField& U, int i, int j) {
  const double r = U.rho(i, j);
  return {U.qx(i, j) / r, U.qy(i, j) / r};
}

}  // namespace allmach
