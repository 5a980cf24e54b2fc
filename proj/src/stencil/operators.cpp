#include "allmach/stencil/operators.hpp"

#include <cmath>

#include "allmach/core/errors.hpp"

namespace allmach {

namespace {

constexpr int G = kGhost;

struct LineRef {
  std::size_t base;
  std::size_t stride;
  int n;
};

LineRef x_line(const Grid& g, int j) { return {g.index(-G, j), 1, g.nx()}; }
LineRef y_line(const Grid& g, int i) { return {g.index(i, -G), g.stride(), g.ny()}; }

void gather(const Field& f, const LineRef& l, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(l.n + 2 * G));
  const double* d = f.data();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = d[l.base + k * l.stride];
}

void scatter_add(Field& f, const LineRef& l, const std::vector<double>& v) {
  double* d = f.data();
  for (int k = 0; k < l.n; ++k) d[l.base + static_cast<std::size_t>(k + G) * l.stride] += v[k];
}

inline double dot4(const std::array<double, 4>& a, const double* b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

}  // namespace

EigenSystem characteristic_system(double rho, double un, double ut, double p, double gamma,
                                  double eps) {
  const double c2 = gamma * p / rho;
  if (!(rho > 0.0) || !(c2 > 0.0)) throw DomainError("characteristic_system: c^2 <= 0");
  const double e2 = eps * eps;
  const double kappa = gamma - (gamma - 1.0) * e2;
  const double s = std::sqrt((kappa - 1.0) * (kappa - 1.0) * un * un + 4.0 * c2);
  const double lm = 0.5 * ((1.0 + kappa) * un - s);
  const double lp = 0.5 * ((1.0 + kappa) * un + s);
  const double dm = lm - un, dp = lp - un;

  // primitive (rho, un, ut, p)
  const Mat4 Rp{{{rho, 1.0, 0.0, rho},
                 {dm, 0.0, 0.0, dp},
                 {0.0, 0.0, 1.0, 0.0},
                 {rho * dm * dm, 0.0, 0.0, rho * dp * dp}}};
  const double nm = rho * dm * (-s), np = rho * dp * s;
  const Mat4 Lp{{{0.0, rho * (lm - kappa * un) / nm, 0.0, 1.0 / nm},
                 {1.0, rho * (kappa - 1.0) * un / c2, 0.0, -1.0 / c2},
                 {0.0, 0.0, 1.0, 0.0},
                 {0.0, rho * (lp - kappa * un) / np, 0.0, 1.0 / np}}};

  const double q2 = un * un + ut * ut;
  const double gm1 = gamma - 1.0;
  const Mat4 M{{{1.0, 0.0, 0.0, 0.0},
                {un, rho, 0.0, 0.0},
                {ut, 0.0, rho, 0.0},
                {0.5 * e2 * q2, e2 * rho * un, e2 * rho * ut, 1.0 / gm1}}};
  const Mat4 Mi{{{1.0, 0.0, 0.0, 0.0},
                 {-un / rho, 1.0 / rho, 0.0, 0.0},
                 {-ut / rho, 0.0, 1.0 / rho, 0.0},
                 {gm1 * 0.5 * e2 * q2, -gm1 * e2 * un, -gm1 * e2 * ut, gm1}}};

  EigenSystem es{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double r = 0.0, l = 0.0;
      for (int k = 0; k < 4; ++k) {
        r += M[a][k] * Rp[k][b];
        l += Lp[a][k] * Mi[k][b];
      }
      es.R[a][b] = r;
      es.L[a][b] = l;
    }
  es.lambda = {lm, un, un, lp};
  return es;
}

void characteristic_line(const CharLine& line, double lambda, double gamma, double eps,
                         const WenoConfig& cfg, double h, std::array<double*, 4> out_flux,
                         std::array<double*, 4> out_src, WeightTrace* trace) {
  const int n = line.n;
  const int m = n + 2 * G;
  const bool wb = line.p0 != nullptr;
  // split flux minus the balanced source part, node-wise: 0.5 (F - P +/- lambda V)
  std::vector<std::array<double, 4>> fp(m), fm(m);
  for (int k = 0; k < m; ++k) {
    const double r = line.rho[k];
    const double un = line.qn[k] / r, ut = line.qt[k] / r;
    const double pk = line.p[k];
    const double pdev = wb ? line.dp[k] : pk;
    const std::array<double, 4> F{line.qn[k], line.qn[k] * un + pdev, line.qn[k] * ut,
                                  (line.E[k] + pk) * un};
    for (int c = 0; c < 4; ++c) {
      const double v = lambda * line.visc[c][k];
      fp[k][c] = 0.5 * (F[c] + v);
      fm[k][c] = 0.5 * (F[c] - v);
    }
  }

  std::vector<std::array<double, 4>> fhat(n + 1), shat(n + 1);
  for (int f = 0; f <= n; ++f) {
    const int k = f + G - 1;  // interface between nodes k and k+1
    const double r0 = line.rho[k], r1 = line.rho[k + 1];
    const double rho = 0.5 * (r0 + r1);
    const double un = 0.5 * (line.qn[k] / r0 + line.qn[k + 1] / r1);
    const double ut = 0.5 * (line.qt[k] / r0 + line.qt[k + 1] / r1);
    const double p = 0.5 * (line.p[k] + line.p[k + 1]);
    if (!(rho > 0.0) || !(p > 0.0))
      throw NumericalStateError("characteristic projection: nonpositive c^2", k - G, -1);
    const EigenSystem es = characteristic_system(rho, un, ut, p, gamma, eps);

    double wp[6][4], wm[6][4], sp[6][4];
    for (int s = 0; s < 6; ++s) {
      const int node = k - 2 + s;
      double dev_p[4], dev_m[4];
      for (int c = 0; c < 4; ++c) {
        dev_p[c] = fp[node][c];
        dev_m[c] = fm[node][c];
      }
      const double half_p0 = wb ? 0.5 * line.p0[node] : 0.0;
      for (int c = 0; c < 4; ++c) {
        // weights come from the full split flux F+/- = dev + P+/-
        wp[s][c] = dot4(es.L[c], dev_p);
        wm[s][c] = dot4(es.L[c], dev_m);
        sp[s][c] = es.L[c][1] * half_p0;
      }
    }

    std::array<double, 4> chf{}, chs{};
    for (int c = 0; c < 4; ++c) {
      double vp[5], vm[5], fullp[5], fullm[5], svp[5], svm[5];
      for (int s = 0; s < 5; ++s) {
        vp[s] = wp[s][c];
        vm[s] = wm[5 - s][c];
        fullp[s] = wp[s][c] + sp[s][c];
        fullm[s] = wm[5 - s][c] + sp[5 - s][c];
        svp[s] = sp[s][c];
        svm[s] = sp[5 - s][c];
      }
      const Weights3 ap = weno5_weights(wb ? fullp : vp, cfg);
      const Weights3 am = weno5_weights(wb ? fullm : vm, cfg);
      chf[c] = weno5_apply(ap, vp) + weno5_apply(am, vm);
      if (wb) chs[c] = weno5_apply(ap, svp) + weno5_apply(am, svm);
      if (trace) {
        trace->flux.push_back(ap);
        trace->flux.push_back(am);
        if (wb) {
          trace->source.push_back(ap);
          trace->source.push_back(am);
        }
      }
    }
    for (int a = 0; a < 4; ++a) {
      double sf = 0.0, ss = 0.0;
      for (int c = 0; c < 4; ++c) {
        sf += es.R[a][c] * chf[c];
        ss += es.R[a][c] * chs[c];
      }
      fhat[f][a] = sf;
      shat[f][a] = ss;
    }
  }

  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < n; ++i) {
      out_flux[c][i] = (fhat[i + 1][c] - fhat[i][c]) / h;
      if (out_src[c]) out_src[c][i] = wb ? (shat[i + 1][c] - shat[i][c]) / h : 0.0;
    }
}

namespace {

void cw_sweep(const ConservedField& U, const Field& p, const Field* dp,
              const std::array<const Field*, 4>& visc, const Field* p0, double lambda,
              double gamma, double eps, const WenoConfig& cfg, Axis axis, CwResult& out) {
  const Grid& g = U.grid();
  const bool along_x = axis == Axis::x;
  const int lines = along_x ? g.ny() : g.nx();
  const double h = along_x ? g.dx() : g.dy();
  // component map from (rho, qn, qt, E) to (rho, qx, qy, E)
  const std::array<int, 4> comp = along_x ? std::array<int, 4>{0, 1, 2, 3}
                                          : std::array<int, 4>{0, 2, 1, 3};
  const Field& qn = along_x ? U.qx : U.qy;
  const Field& qt = along_x ? U.qy : U.qx;

#pragma omp parallel for schedule(static)
  for (int l = 0; l < lines; ++l) {
    const LineRef ref = along_x ? x_line(g, l) : y_line(g, l);
    std::vector<double> rho, vn, vt, E, pp, dpp, p0l;
    std::array<std::vector<double>, 4> vis;
    gather(U.rho, ref, rho);
    gather(qn, ref, vn);
    gather(qt, ref, vt);
    gather(U.E, ref, E);
    gather(p, ref, pp);
    if (p0) {
      gather(*p0, ref, p0l);
      gather(*dp, ref, dpp);
    }
    for (int c = 0; c < 4; ++c) gather(*visc[comp[c]], ref, vis[c]);
    CharLine cl;
    cl.n = ref.n;
    cl.rho = rho.data();
    cl.qn = vn.data();
    cl.qt = vt.data();
    cl.E = E.data();
    cl.p = pp.data();
    for (int c = 0; c < 4; ++c) cl.visc[c] = vis[c].data();
    if (p0) {
      cl.p0 = p0l.data();
      cl.dp = dpp.data();
    }
    std::array<std::vector<double>, 4> of, os;
    std::array<double*, 4> pf{}, ps{};
    for (int c = 0; c < 4; ++c) {
      of[c].assign(ref.n, 0.0);
      os[c].assign(ref.n, 0.0);
      pf[c] = of[c].data();
      ps[c] = os[c].data();
    }
    characteristic_line(cl, lambda, gamma, eps, cfg, h, pf, ps);
    for (int c = 0; c < 4; ++c) {
      scatter_add(out.dev[comp[c]], ref, of[c]);
      scatter_add(out.src[comp[c]], ref, os[c]);
    }
  }
}

}  // namespace

CwResult div_cw(const ConservedField& U, const Field& p, const Field* dp,
                const std::array<const Field*, 4>& visc, const Field* p0, double lambda,
                double gamma, double eps, const WenoConfig& cfg) {
  const Grid& g = U.grid();
  if (p0 && !dp) throw std::invalid_argument("div_cw: source needs the pressure deviation");
  CwResult out{{Field(g), Field(g), Field(g), Field(g)}, {Field(g), Field(g), Field(g), Field(g)}};
  cw_sweep(U, p, dp, visc, p0, lambda, gamma, eps, cfg, Axis::x, out);
  if (g.dim() == 2) cw_sweep(U, p, dp, visc, p0, lambda, gamma, eps, cfg, Axis::y, out);
  return out;
}

CwResult div_cw_wb(const ConservedField& U, const Field& p, const Field& dp, const Background& bg,
                   double lambda, double gamma, double eps, const WenoConfig& cfg) {
  const Grid& g = U.grid();
  Field vr(g), ve(g);
  const std::size_t sz = g.size();
  for (std::size_t k = 0; k < sz; ++k) {
    vr.data()[k] = U.rho.data()[k] - bg.rho0.data()[k];
    ve.data()[k] = U.E.data()[k] - bg.E0.data()[k];
  }
  return div_cw(U, p, &dp, {&vr, &U.qx, &U.qy, &ve}, &bg.p0, lambda, gamma, eps, cfg);
}

Field deriv_w(const Field& f, const Field& v, Axis axis, double lambda, const WenoConfig& cfg) {
  const Grid& g = f.grid();
  Field out(g);
  const bool along_x = axis == Axis::x;
  if (!along_x && g.dim() != 2) throw std::invalid_argument("deriv_w: y axis on a 1D grid");
  const int lines = along_x ? g.ny() : g.nx();
  const double h = along_x ? g.dx() : g.dy();
#pragma omp parallel for schedule(static)
  for (int l = 0; l < lines; ++l) {
    const LineRef ref = along_x ? x_line(g, l) : y_line(g, l);
    std::vector<double> fl, vl;
    gather(f, ref, fl);
    gather(v, ref, vl);
    const int m = ref.n + 2 * G;
    std::vector<double> sp(m), sm(m), flux(ref.n + 1), d(ref.n);
    for (int k = 0; k < m; ++k) {
      sp[k] = 0.5 * (fl[k] + lambda * vl[k]);
      sm[k] = 0.5 * (fl[k] - lambda * vl[k]);
    }
    for (int fi = 0; fi <= ref.n; ++fi) {
      const int k = fi + G - 1;
      const double mir[5] = {sm[k + 3], sm[k + 2], sm[k + 1], sm[k], sm[k - 1]};
      flux[fi] = weno5_apply(weno5_weights(&sp[k - 2], cfg), &sp[k - 2]) +
                 weno5_apply(weno5_weights(mir, cfg), mir);
    }
    for (int i = 0; i < ref.n; ++i) d[i] = (flux[i + 1] - flux[i]) / h;
    scatter_add(out, ref, d);
  }
  return out;
}

Field div_w(const Field& fx, const Field& vx, const Field* fy, const Field* vy, double lambda,
            const WenoConfig& cfg) {
  Field out = deriv_w(fx, vx, Axis::x, lambda, cfg);
  if (fx.grid().dim() == 2) {
    if (!fy || !vy) throw std::invalid_argument("div_w: missing y component");
    out += deriv_w(*fy, *vy, Axis::y, lambda, cfg);
  }
  return out;
}

namespace {

// left- and right-biased WENO derivatives of theta along one line
void upwind_line(const std::vector<double>& t, int n, double h, const WenoConfig& cfg,
                 std::vector<double>& dl, std::vector<double>& dr) {
  std::vector<double> tl(n + 1), tr(n + 1);
  for (int fi = 0; fi <= n; ++fi) {
    const int k = fi + G - 1;
    tl[fi] = weno5_apply(weno5_weights(&t[k - 2], cfg), &t[k - 2]);
    const double mir[5] = {t[k + 3], t[k + 2], t[k + 1], t[k], t[k - 1]};
    tr[fi] = weno5_apply(weno5_weights(mir, cfg), mir);
  }
  dl.resize(n);
  dr.resize(n);
  for (int i = 0; i < n; ++i) {
    dl[i] = (tl[i + 1] - tl[i]) / h;
    dr[i] = (tr[i + 1] - tr[i]) / h;
  }
}

void upwind_sweep(const Field& theta, const Field& u, Axis axis, const WenoConfig& cfg,
                  Field& out) {
  const Grid& g = theta.grid();
  const bool along_x = axis == Axis::x;
  const int lines = along_x ? g.ny() : g.nx();
  const double h = along_x ? g.dx() : g.dy();
#pragma omp parallel for schedule(static)
  for (int l = 0; l < lines; ++l) {
    const LineRef ref = along_x ? x_line(g, l) : y_line(g, l);
    std::vector<double> t, ul, dl, dr, d(ref.n);
    gather(theta, ref, t);
    gather(u, ref, ul);
    upwind_line(t, ref.n, h, cfg, dl, dr);
    for (int i = 0; i < ref.n; ++i) {
      const double vel = ul[i + G];
      const double deriv = vel > 0.0 ? dl[i] : (vel < 0.0 ? dr[i] : 0.5 * (dl[i] + dr[i]));
      d[i] = vel * deriv;
    }
    scatter_add(out, ref, d);
  }
}

}  // namespace

Field grad_uw(const Field& theta, const Field& ux, const Field& uy, const WenoConfig& cfg) {
  const Grid& g = theta.grid();
  Field out(g);
  upwind_sweep(theta, ux, Axis::x, cfg, out);
  if (g.dim() == 2) {
    Field oy(g);
    upwind_sweep(theta, uy, Axis::y, cfg, oy);
    out += oy;
  }
  return out;
}

}  // namespace allmach
