#include "spraylab/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace spraylab {

std::vector<std::vector<Jet>> nonlinear_connection(const std::vector<Jet>& G,
                                                   int n) {
  std::vector<std::vector<Jet>> N(n, std::vector<Jet>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) N[i][j] = G[i].deriv(n + j);
  return N;
}

std::vector<std::vector<std::vector<Jet>>> berwald_coeffs(
    const std::vector<Jet>& G, int n) {
  std::vector<std::vector<std::vector<Jet>>> C(
      n, std::vector<std::vector<Jet>>(n, std::vector<Jet>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet Nij = G[i].deriv(n + j);
      for (int k = j; k < n; ++k) {
        C[i][j][k] = Nij.deriv(n + k);
        if (k != j) C[i][k][j] = C[i][j][k];
      }
    }
  return C;
}

std::vector<std::vector<Jet>> riemann_jets(const JetVars& vars,
                                           const std::vector<Jet>& G, int n) {
  std::vector<std::vector<Jet>> R(n, std::vector<Jet>(n));
  std::vector<std::vector<Jet>> N = nonlinear_connection(G, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      // 2 d_k G^i - y^j d_j Ndot^i_k + 2 G^j Ndot^i_k,j - N^i_j N^j_k
      Jet r = 2.0 * G[i].deriv(k);
      for (int j = 0; j < n; ++j) {
        r -= vars[n + j] * N[i][k].deriv(j);
        r += 2.0 * G[j] * N[i][k].deriv(n + j);
        r -= N[i][j] * N[j][k];
      }
      R[i][k] = r;
    }
  }
  return R;
}

std::vector<Jet> horizontal_derivative(const Jet& f,
                                       const std::vector<std::vector<Jet>>& N,
                                       int n) {
  std::vector<Jet> out(n);
  for (int i = 0; i < n; ++i) {
    Jet d = f.deriv(i);
    for (int r = 0; r < n; ++r) d -= N[r][i] * f.deriv(n + r);
    out[i] = d;
  }
  return out;
}

Jet contract_y(const std::vector<Jet>& cov, const JetVars& vars, int n) {
  Jet out = vars[n] * cov[0];
  for (int i = 1; i < n; ++i) out += vars[n + i] * cov[i];
  return out;
}

CurvatureReport riemann(const SprayModel& s, const Point& p,
                        const ClassifyOptions& opts) {
  const int n = s.n;
  JetVars vars = lift(p, opts.order + s.extra_order);
  auto G = s.coeffs(vars);
  for (Jet& g : G) g = g.truncated(opts.order);
  auto R = riemann_jets(vars, G, n);

  CurvatureReport rep;
  rep.point = p;
  rep.R_mat.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      rep.R_mat[i][k] = R[i][k].value();
      rep.norm_R = std::max(rep.norm_R, std::abs(rep.R_mat[i][k]));
      if (i == k) rep.ric += rep.R_mat[i][k];
    }
  rep.R_scalar = n > 1 ? rep.ric / (n - 1) : 0.0;

  // decomposition R^i_k = R delta^i_k - tau_k y^i, extracted at the index
  // with the largest |y^i|
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(p[n + i]) > std::abs(p[n + imax])) imax = i;
  rep.tau.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double delta = imax == k ? rep.R_scalar : 0.0;
    rep.tau[k] = (delta - rep.R_mat[imax][k]) / p[n + imax];
  }

  const double scale = std::max(1.0, rep.norm_R);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double delta = i == k ? rep.R_scalar : 0.0;
      rep.residual_scalar =
          std::max(rep.residual_scalar,
                   std::abs(rep.R_mat[i][k] - delta + rep.tau[k] * p[n + i]) /
                       scale);
    }

  // isotropic: R_{.k} = 2 tau_k
  Jet Rjet = R[0][0].constant_like(0.0);
  for (int i = 0; i < n; ++i) Rjet += R[i][i];
  Rjet = Rjet / static_cast<double>(n - 1);
  for (int k = 0; k < n; ++k)
    rep.residual_isotropic =
        std::max(rep.residual_isotropic,
                 std::abs(Rjet.deriv(n + k).value() - 2.0 * rep.tau[k]) / scale);

  // constant: R_{;i} = 0
  auto N = nonlinear_connection(G, n);
  auto Rh = horizontal_derivative(Rjet, N, n);
  for (int i = 0; i < n; ++i)
    rep.residual_constant =
        std::max(rep.residual_constant, std::abs(Rh[i].value()) / scale);

  rep.flags.r_flat = rep.norm_R < opts.tol;
  rep.flags.scalar = rep.residual_scalar < opts.tol;
  rep.flags.isotropic = rep.flags.scalar && rep.residual_isotropic < opts.tol;
  rep.flags.constant =
      rep.flags.r_flat ||
      (rep.flags.scalar && rep.residual_constant < opts.tol);
  return rep;
}

ClassifyResult classify(const SprayModel& s, const std::vector<Point>& points,
                        const ClassifyOptions& opts) {
  if (points.empty()) throw EmptyPointSet();
  ClassifyResult out;
  out.flags = {true, true, true, true};
  for (const Point& p : points) {
    CurvatureReport rep = riemann(s, p, opts);
    out.residual_scalar = std::max(out.residual_scalar, rep.residual_scalar);
    out.residual_isotropic =
        std::max(out.residual_isotropic, rep.residual_isotropic);
    out.residual_constant =
        std::max(out.residual_constant, rep.residual_constant);
    out.norm_R = std::max(out.norm_R, rep.norm_R);
    out.flags.scalar = out.flags.scalar && rep.flags.scalar;
    out.flags.isotropic = out.flags.isotropic && rep.flags.isotropic;
    out.flags.constant = out.flags.constant && rep.flags.constant;
    out.flags.r_flat = out.flags.r_flat && rep.flags.r_flat;
    out.reports.push_back(std::move(rep));
  }
  return out;
}

std::vector<std::vector<std::vector<std::vector<double>>>> berwald_curvature(
    const SprayModel& s, const Point& p, int order) {
  const int n = s.n;
  auto G = s.coeffs_at(p, order);
  std::vector<std::vector<std::vector<std::vector<double>>>> B(
      n, std::vector<std::vector<std::vector<double>>>(
             n, std::vector<std::vector<double>>(n, std::vector<double>(n))));
  for (int i = 0; i < n; ++i) {
    auto Gi = G[i];
    for (int h = 0; h < n; ++h) {
      Jet dh = Gi.deriv(n + h);
      for (int j = 0; j < n; ++j) {
        Jet dhj = dh.deriv(n + j);
        for (int k = 0; k < n; ++k) B[i][h][j][k] = dhj.deriv(n + k).value();
      }
    }
  }
  return B;
}

std::vector<std::vector<std::vector<double>>> riemann3(const SprayModel& s,
                                                       const Point& p,
                                                       int order) {
  const int n = s.n;
  JetVars vars = lift(p, order + s.extra_order);
  auto G = s.coeffs(vars);
  for (Jet& g : G) g = g.truncated(order);
  auto R = riemann_jets(vars, G, n);
  std::vector<std::vector<std::vector<double>>> out(
      n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out[i][j][k] = (R[i][k].deriv(n + j).value() -
                        R[i][j].deriv(n + k).value()) /
                       3.0;
  return out;
}

Jet s_curvature(const SprayModel& s, const Expr& sigma, const Point& p,
                int order) {
  const int n = s.n;
  JetVars vars = lift(p, order + s.extra_order);
  auto G = s.coeffs(vars);
  double sval = sigma.eval(p);
  if (sval <= 0)
    throw NonpositiveDensity("volume density is " + std::to_string(sval));
  Jet lnsig = log(sigma.eval_jet(vars));
  Jet S = G[0].truncated(order).deriv(n + 0) - vars[n] * lnsig.deriv(0);
  for (int i = 1; i < n; ++i)
    S += G[i].truncated(order).deriv(n + i) - vars[n + i] * lnsig.deriv(i);
  return S;
}

}  // namespace spraylab
