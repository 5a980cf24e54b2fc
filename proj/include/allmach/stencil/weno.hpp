#pragma once

#include <array>
#include <span>

#include "allmach/core/state.hpp"

namespace allmach {

struct WenoConfig {
  double eps = 1e-6;
  WeightsMode mode = WeightsMode::nonlinear;

  static WenoConfig from(const SimParams& p) { return {p.weno_eps, p.weights}; }
};

using Weights3 = std::array<double, 3>;

inline constexpr Weights3 kLinearWeights{0.1, 0.6, 0.3};

// Fifth-order WENO-JS weights for the stencil v = (f[i-2], ..., f[i+2]),
// reconstructing at i + 1/2 from the left. Mirror the stencil for the
// right-biased value.
Weights3 weno5_weights(const double* v, const WenoConfig& cfg);

// Convex combination of the three third-order candidates.
double weno5_apply(const Weights3& w, const double* v);

inline double weno5_reconstruct(std::span<const double, 5> v, const WenoConfig& cfg) {
  return weno5_apply(weno5_weights(v.data(), cfg), v.data());
}

struct SplitFluxPair {
  Field plus, minus;
};

// F(+/-) = (F +/- lambda V) / 2 on every node
SplitFluxPair lf_split(const Field& F, const Field& V, double lambda);

}  // namespace allmach
