#include <cmath>
#include <random>

#include "allmach/core/eos.hpp"
#include "allmach/stencil/operators.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace allmach;

namespace {

const WenoConfig kLinear{1e-6, WeightsMode::linear};
const WenoConfig kNonlinear{1e-6, WeightsMode::nonlinear};

template <class Fn>
Field sample(const Grid& g, Fn f) {
  Field out(g);
  for (int j = -g.gy(); j < g.ny() + g.gy(); ++j)
    for (int i = -g.gx(); i < g.nx() + g.gx(); ++i) out(i, j) = f(g.x(i), g.y(j));
  return out;
}

double max_interior(const Grid& g, auto err) {
  double m = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) m = std::max(m, std::abs(err(i, j)));
  return m;
}

double dquartic(double x) { return 4.0 * x * x * x - 2.0 * x + 1.0; }

}  // namespace

TEST_CASE("linear weights reproduce quartics from cell means in both directions") {
  for (double h : {0.2, 0.05, 0.01})
    for (int i = -6; i <= 6; ++i) {
      double v[5], w[5];
      for (int k = 0; k < 5; ++k) {
        const double a = (i + k - 2 - 0.5) * h;
        v[k] = oracle::quartic_mean(a, a + h);
        w[4 - k] = v[k];
      }
      CHECK(std::abs(weno5_apply(weno5_weights(v, kLinear), v) - oracle::quartic((i + 0.5) * h)) <=
            1e-12);
      CHECK(std::abs(weno5_apply(weno5_weights(w, kLinear), w) - oracle::quartic((i - 0.5) * h)) <=
            1e-12);
    }
}

TEST_CASE("nonlinear weights are convex and avoid a jump") {
  const double smooth[5] = {0.0, 0.1, 0.2, 0.3, 0.4};
  const Weights3 ws = weno5_weights(smooth, kNonlinear);
  CHECK(ws[0] + ws[1] + ws[2] == doctest::Approx(1.0));
  for (int k = 0; k < 3; ++k) CHECK(ws[k] == doctest::Approx(kLinearWeights[k]).epsilon(1e-6));

  const double jump[5] = {0.0, 0.0, 0.0, 1.0, 1.0};
  const Weights3 wj = weno5_weights(jump, kNonlinear);
  CHECK(wj[0] + wj[1] + wj[2] == doctest::Approx(1.0));
  CHECK(wj[0] > 0.99);
  CHECK(std::abs(weno5_apply(wj, jump)) < 1e-6);
}

TEST_CASE("Lax-Friedrichs split recombines") {
  const Grid g(0.0, 1.0, 5);
  const Field F = sample(g, [](double x, double) { return std::sin(x); });
  const Field V = sample(g, [](double x, double) { return x * x; });
  const SplitFluxPair s = lf_split(F, V, 3.0);
  for (int i = -3; i < 8; ++i) {
    CHECK(s.plus(i) + s.minus(i) == doctest::Approx(F(i)));
    CHECK(s.plus(i) - s.minus(i) == doctest::Approx(3.0 * V(i)));
  }
}

TEST_CASE("characteristic eigenvectors diagonalise the flux Jacobian") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.2, 5.0), vel(-2.0, 2.0);
  for (double eps : {0.0, 1e-2, 0.3, 0.9, 1.0})
    for (int k = 0; k < 40; ++k) {
      const double gamma = k % 2 ? 1.4 : 2.0;
      const double rho = pos(rng), un = vel(rng), ut = vel(rng), p = pos(rng);
      const EigenSystem es = characteristic_system(rho, un, ut, p, gamma, eps);
      const double E = 0.5 * eps * eps * rho * (un * un + ut * ut) + p / (gamma - 1.0);
      const auto J = oracle::numerical_jacobian({rho, rho * un, rho * ut, E}, gamma, eps);
      double scale = 0.0;
      for (double l : es.lambda) scale = std::max(scale, std::abs(l));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double lr = 0.0, ljr = 0.0;
          for (int m = 0; m < 4; ++m) {
            lr += es.L[a][m] * es.R[m][b];
            for (int q = 0; q < 4; ++q) ljr += es.L[a][m] * J[m][q] * es.R[q][b];
          }
          CHECK(std::abs(lr - (a == b ? 1.0 : 0.0)) <= 1e-12);
          CHECK(std::abs(ljr - (a == b ? es.lambda[a] : 0.0)) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("component-wise derivative is exact on quartics with linear weights") {
  const Grid g(-1.0, 1.0, 24);
  const Field f = sample(g, [](double x, double) { return oracle::quartic(x); });
  const Field v = sample(g, [](double x, double) { return 1.0 + x * x * x; });
  const Field d = deriv_w(f, v, Axis::x, 2.5, kLinear);
  CHECK(max_interior(g, [&](int i, int j) { return d(i, j) - dquartic(g.x(i)); }) <= 1e-10);

  const Grid g2(-1.0, 1.0, 12, -1.0, 1.0, 16);
  const Field fy = sample(g2, [](double x, double y) { return x * oracle::quartic(y); });
  const Field vy = sample(g2, [](double, double y) { return y * y; });
  const Field dy = deriv_w(fy, vy, Axis::y, 1.0, kLinear);
  CHECK(max_interior(g2, [&](int i, int j) { return dy(i, j) - g2.x(i) * dquartic(g2.y(j)); }) <=
        1e-10);
  CHECK_THROWS(deriv_w(f, v, Axis::y, 1.0, kLinear));
}

TEST_CASE("component-wise derivative converges at fifth order with nonlinear weights") {
  auto error = [](int n) {
    const Grid g(0.0, 2.0, n);
    const Field f = sample(g, [](double x, double) { return std::sin(oracle::kPi * x); });
    const Field d = deriv_w(f, f, Axis::x, 1.0, kNonlinear);
    return max_interior(g, [&](int i, int) {
      return d(i) - oracle::kPi * std::cos(oracle::kPi * g.x(i));
    });
  };
  const double e1 = error(40), e2 = error(80);
  CHECK(std::log2(e1 / e2) >= 4.5);
}

TEST_CASE("upwind gradient is exact on quartics for either velocity sign") {
  const Grid g(-1.0, 1.0, 20, -1.0, 1.0, 20);
  const Field th = sample(g, [](double x, double y) { return oracle::quartic(x) + 2.0 * oracle::quartic(y); });
  const Field ux = sample(g, [](double x, double) { return x < 0.0 ? 1.0 : -0.5; });
  const Field uy = sample(g, [](double, double y) { return y < 0.0 ? -2.0 : 0.0; });
  const Field r = grad_uw(th, ux, uy, kLinear);
  CHECK(max_interior(g, [&](int i, int j) {
          const double x = g.x(i), y = g.y(j);
          return r(i, j) - (ux(i, j) * dquartic(x) + uy(i, j) * 2.0 * dquartic(y));
        }) <= 1e-10);
}

TEST_CASE("well-balanced operator vanishes on a hydrostatic state") {
  const Grid g(0.0, 1.0, 16, 0.0, 1.0, 16);
  HydrostaticState hs;
  hs.rho0 = [](double x, double y) { return std::exp(-x - y); };
  hs.p0 = [](double x, double y) { return std::exp(-x - y); };
  hs.phi = [](double x, double y) { return x + y; };
  hs.grad_phi = [](double, double) { return std::array<double, 2>{1.0, 1.0}; };
  const double gamma = 1.4;
  const Background bg = sample_background(hs, g, gamma);
  for (double eps : {0.9, 0.1}) {
    SimParams prm;
    prm.eps = eps;
    ConservedField U(g);
    U.rho = bg.rho0;
    U.E = bg.E0;
    const Field p = pressure_field(U, prm);
    Field dp = p;
    dp -= bg.p0;
    for (const WenoConfig& cfg : {kLinear, kNonlinear}) {
      const CwResult r = div_cw_wb(U, p, dp, bg, 2.0, gamma, eps, cfg);
      for (int c = 0; c < 4; ++c)
        CHECK(max_interior(g, [&](int i, int j) { return r.dev[c](i, j); }) <= 1e-13);
      CHECK(max_interior(g, [&](int i, int j) { return r.src[1](i, j) + bg.rho0(i, j); }) <= 1e-5);
    }
  }
}

TEST_CASE("source reconstruction reuses the flux weights") {
  const int n = 24, m = n + 2 * kGhost;
  std::vector<double> rho(m), qn(m), qt(m), E(m), p(m), p0(m), dp(m), vr(m), ve(m);
  const double gamma = 1.4, eps = 0.5;
  for (int k = 0; k < m; ++k) {
    const double x = (k - kGhost + 0.5) / n;
    p0[k] = std::exp(-x);
    rho[k] = std::exp(-x) + (x > 0.5 ? 0.3 : 0.0);
    qn[k] = 0.2 * std::sin(6.0 * x);
    qt[k] = 0.1;
    p[k] = p0[k] * (1.0 + (x > 0.4 ? 0.2 : 0.0));
    dp[k] = p[k] - p0[k];
    E[k] = 0.5 * eps * eps * (qn[k] * qn[k] + qt[k] * qt[k]) / rho[k] + p[k] / (gamma - 1.0);
    vr[k] = rho[k] - p0[k];
    ve[k] = E[k] - p0[k] / (gamma - 1.0);
  }
  CharLine line;
  line.n = n;
  line.rho = rho.data();
  line.qn = qn.data();
  line.qt = qt.data();
  line.E = E.data();
  line.p = p.data();
  line.visc = {vr.data(), qn.data(), qt.data(), ve.data()};
  line.p0 = p0.data();
  line.dp = dp.data();
  std::array<std::vector<double>, 4> fl, sr;
  std::array<double*, 4> fo{}, so{};
  for (int c = 0; c < 4; ++c) {
    fl[c].assign(n, 0.0);
    sr[c].assign(n, 0.0);
    fo[c] = fl[c].data();
    so[c] = sr[c].data();
  }
  WeightTrace trace;
  characteristic_line(line, 3.0, gamma, eps, kNonlinear, 1.0 / n, fo, so, &trace);
  REQUIRE(!trace.flux.empty());
  REQUIRE(trace.flux.size() == trace.source.size());
  bool nonlinear = false;
  for (std::size_t k = 0; k < trace.flux.size(); ++k) {
    for (int s = 0; s < 3; ++s) {
      CHECK(trace.flux[k][s] == trace.source[k][s]);
      nonlinear = nonlinear || std::abs(trace.flux[k][s] - kLinearWeights[s]) > 0.05;
    }
  }
  CHECK(nonlinear);
}
