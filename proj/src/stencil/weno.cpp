#include "allmach/stencil/weno.hpp"

namespace allmach {

Weights3 weno5_weights(const double* v, const WenoConfig& cfg) {
  if (cfg.mode == WeightsMode::linear) return kLinearWeights;
  const double a = v[0], b = v[1], c = v[2], d = v[3], e = v[4];
  const double t0 = a - 2.0 * b + c, s0 = a - 4.0 * b + 3.0 * c;
  const double t1 = b - 2.0 * c + d, s1 = b - d;
  const double t2 = c - 2.0 * d + e, s2 = 3.0 * c - 4.0 * d + e;
  const double b0 = 13.0 / 12.0 * t0 * t0 + 0.25 * s0 * s0;
  const double b1 = 13.0 / 12.0 * t1 * t1 + 0.25 * s1 * s1;
  const double b2 = 13.0 / 12.0 * t2 * t2 + 0.25 * s2 * s2;
  const double a0 = kLinearWeights[0] / ((cfg.eps + b0) * (cfg.eps + b0));
  const double a1 = kLinearWeights[1] / ((cfg.eps + b1) * (cfg.eps + b1));
  const double a2 = kLinearWeights[2] / ((cfg.eps + b2) * (cfg.eps + b2));
  const double s = a0 + a1 + a2;
  return {a0 / s, a1 / s, a2 / s};
}

double weno5_apply(const Weights3& w, const double* v) {
  const double a = v[0], b = v[1], c = v[2], d = v[3], e = v[4];
  const double q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
  const double q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
  const double q2 = (2.0 * c + 5.0 * d - e) / 6.0;
  return w[0] * q0 + w[1] * q1 + w[2] * q2;
}

SplitFluxPair lf_split(const Field& F, const Field& V, double lambda) {
  SplitFluxPair out{Field(F.grid()), Field(F.grid())};
  const double* f = F.data();
  const double* v = V.data();
  double* p = out.plus.data();
  double* m = out.minus.data();
  for (std::size_t k = 0; k < F.size(); ++k) {
    p[k] = 0.5 * (f[k] + lambda * v[k]);
    m[k] = 0.5 * (f[k] - lambda * v[k]);
  }
  return out;
}

}  // namespace allmach
