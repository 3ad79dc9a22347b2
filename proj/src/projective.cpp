#include "spraylab/projective.hpp"

#include <algorithm>
#include <cmath>

#include "spraylab/catalog.hpp"

namespace spraylab {

namespace {

double norm_inf(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

DeformedSpray deform(const SprayModel& s, const ScalarField& P) {
  if (P.degree != 1)
    throw DegreeMismatch("projective factor must have degree 1, got " +
                         std::to_string(P.degree));
  if (P.n != s.n) throw DegreeMismatch("dimension mismatch");
  const int n = s.n;
  DeformedSpray out;
  out.spray.n = n;
  out.spray.label = s.label + "+" + P.label + "*y";
  out.spray.extra_order = std::max(s.extra_order, P.extra_order);
  out.spray.domain = s.domain;
  for (const Expr& e : P.domain) out.spray.domain.push_back(e);
  for (int i = 0; i < n; ++i) {
    auto gi = s.G[i];
    auto pf = P.fn;
    out.spray.G.push_back([gi, pf, i, n](const JetVars& v) {
      Jet g = gi(v);
      Jet p = pf(v);
      // align: fn-backed pieces may come back at different orders
      if (p.order() < g.order()) g = g.truncated(p.order());
      if (g.order() < p.order()) p = p.truncated(g.order());
      return g + p * v[n + i].truncated(g.order());
    });
  }
  if (s.exprs && P.expr) {
    std::vector<Expr> ge;
    for (int i = 0; i < n; ++i)
      ge.push_back((*s.exprs)[i] + *P.expr * Expr::coord(n + i, n));
    out.spray.exprs = std::move(ge);
  }
  return out;
}

ScalarField pm_factor(const SprayModel& s, const ScalarField& Q,
                      double floor) {
  const int n = s.n;
  ScalarField out;
  out.n = n;
  out.degree = 1;
  out.label = "(" + Q.label + "_h0)/(2*" + Q.label + ")";
  out.extra_order = std::max(s.extra_order, Q.extra_order) + 1;
  out.domain = Q.domain;
  auto qf = Q.fn;
  auto gs = s.G;
  out.fn = [qf, gs, n, floor](const JetVars& vars) {
    Jet q = qf(vars);
    if (std::abs(q.value()) <= floor)
      throw ZeroAdjointFunction("|Q| below floor at sample point");
    std::vector<Jet> G(n);
    for (int i = 0; i < n; ++i) G[i] = gs[i](vars);
    int ord = q.order();
    for (const Jet& g : G) ord = std::min(ord, g.order());
    q = q.truncated(ord);
    for (Jet& g : G) g = g.truncated(ord);
    auto N = nonlinear_connection(G, n);
    auto qh = horizontal_derivative(q, N, n);
    Jet q0 = contract_y(qh, vars, n);
    return q0 / (2.0 * q.truncated(q0.order()));
  };
  return out;
}

DeformedSpray pm_spray(const SprayModel& s, const ScalarField& Q,
                       const std::vector<Point>& tag_points, double floor) {
  DeformedSpray out = deform(s, pm_factor(s, Q, floor));
  if (!tag_points.empty()) {
    for (const Point& p : tag_points)
      if (std::abs(Q.eval(p)) <= floor)
        throw ZeroAdjointFunction("|Q| below floor at tag point");
    if (is_funk(Q, s, tag_points).verdict)
      out.tag = "funk_spray";
    else if (is_hamel(Q, s, tag_points).verdict)
      out.tag = "hamel_spray";
  }
  return out;
}

CurvatureTransform curvature_transform_oracle(const SprayModel& s,
                                              const ScalarField& P,
                                              const Point& p, int order) {
  const int n = s.n;
  int raise = std::max(s.extra_order, P.extra_order);
  JetVars vars = lift(p, order + raise);
  auto G = s.coeffs(vars);
  for (Jet& g : G) g = g.truncated(order);
  Jet Pj = P.jet(vars).truncated(order);
  auto N = nonlinear_connection(G, n);
  auto R = riemann_jets(vars, G, n);
  auto Ph = horizontal_derivative(Pj, N, n);

  std::vector<Jet> T(n);
  for (int j = 0; j < n; ++j) T[j] = Ph[j] - Pj * Pj.deriv(n + j);
  Jet T0 = contract_y(T, vars, n);

  CurvatureTransform out;
  out.R_mat.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double v = R[i][k].value() +
                 (3.0 * T[k].value() - T0.deriv(n + k).value()) * p[n + i];
      if (i == k) v -= T0.value();
      out.R_mat[i][k] = v;
    }
  double ric = 0;
  for (int i = 0; i < n; ++i) ric += R[i][i].value();
  out.ric = ric - (n - 1) * (contract_y(Ph, vars, n).value() -
                             Pj.value() * Pj.value());
  return out;
}

std::vector<double> hamel_spray_residual(const SprayModel& s,
                                         const ScalarField& Q, const Point& p,
                                         int order) {
  SprayModel bar = pm_spray(s, Q).spray;
  auto hd = h_derivative(Q, bar, p, order);
  std::vector<double> out(s.n);
  for (int i = 0; i < s.n; ++i) out[i] = hd.covector[i].value();
  return out;
}

LambdaResult lambda_extract(const SprayModel& s, const ScalarField& Q,
                            const std::vector<Point>& points,
                            const ClassifyOptions& opts) {
  if (points.empty()) throw EmptyPointSet();
  const int n = s.n;
  ScalarField P = pm_factor(s, Q);
  DeformedSpray bar = deform(s, P);

  LambdaResult out;
  for (const Point& p : points) {
    CurvatureReport rbar = riemann(bar.spray, p, opts);
    if (rbar.residual_scalar > opts.tol)
      throw NotScalarCurvature("deformed spray is not of scalar curvature (" +
                               std::to_string(rbar.residual_scalar) + ")");

    // lambda as a jet: (R + P^2 - P_{;0}) / Q^2 on the base spray.
    int raise = std::max({s.extra_order, Q.extra_order, P.extra_order});
    JetVars vars = lift(p, opts.order + raise);
    auto G = s.coeffs(vars);
    for (Jet& g : G) g = g.truncated(opts.order);
    auto R = riemann_jets(vars, G, n);
    Jet Rjet = R[0][0];
    for (int i = 1; i < n; ++i) Rjet += R[i][i];
    Rjet = Rjet / static_cast<double>(n - 1);

    Jet Pj = P.jet(vars).truncated(opts.order);
    Jet Qj = Q.jet(vars).truncated(opts.order);
    auto N = nonlinear_connection(G, n);
    auto Ph = horizontal_derivative(Pj, N, n);
    Jet P0 = contract_y(Ph, vars, n);
    int ord = std::min({Rjet.order(), Pj.order(), P0.order()});
    Jet lam = (Rjet.truncated(ord) + pow_int(Pj.truncated(ord), 2) -
               P0.truncated(ord)) /
              pow_int(Qj.truncated(ord), 2);
    out.lambda.push_back(lam.value());
    for (int k = 0; k < n; ++k) {
      out.max_y_deriv =
          std::max(out.max_y_deriv, std::abs(lam.deriv(n + k).value()));
      out.max_x_deriv =
          std::max(out.max_x_deriv, std::abs(lam.deriv(k).value()));
    }

    // Rbar^i_k = lambda (Q^2 d^i_k - Q Q_{.k} y^i)
    double q = Qj.value();
    double scale = std::max(1.0, rbar.norm_R);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double expect = lam.value() *
                        (q * q * (i == k ? 1.0 : 0.0) -
                         q * Qj.deriv(n + k).value() * p[n + i]);
        out.residual_form = std::max(
            out.residual_form, std::abs(rbar.R_mat[i][k] - expect) / scale);
      }
  }
  out.flags.scalar = true;
  out.flags.isotropic = out.max_y_deriv < opts.tol;
  out.flags.constant = out.flags.isotropic && out.max_x_deriv < opts.tol;
  return out;
}

DeformedSpray cf_family(double c, int n) {
  SprayModel base = catalog_spray("funk_spray", n);
  ScalarField F = catalog_field("ball_funk", n);
  ScalarField P = F.reversed();
  P.label = "cF(-y)";
  if (P.expr) *P.expr = Expr::number(c, n) * *P.expr;
  auto pf = P.fn;
  P.fn = [pf, c](const JetVars& v) { return c * pf(v); };
  DeformedSpray out = deform(base, P);
  out.spray.label = "cf_family(c=" + std::to_string(c) + ")";
  return out;
}

CfClassification cf_classify(double c, const std::vector<Point>& points,
                             const ClassifyOptions& opts) {
  DeformedSpray d = cf_family(c);
  CfClassification out;
  out.detail = classify(d.spray, points, opts);
  out.verdict = out.detail.flags.constant ? CfVerdict::constant
                                          : CfVerdict::isotropic_only;
  return out;
}

CfObstruction cf_constancy_obstruction(double c, const Point& p, int n,
                                       int order) {
  DeformedSpray d = cf_family(c, n);
  JetVars vars = lift(p, order + d.spray.extra_order);
  auto G = d.spray.coeffs(vars);
  for (Jet& g : G) g = g.truncated(order);
  auto R = riemann_jets(vars, G, n);
  Jet Rbar = R[0][0];
  for (int i = 1; i < n; ++i) Rbar += R[i][i];
  Rbar = Rbar / static_cast<double>(n - 1);
  auto N = nonlinear_connection(G, n);
  auto Rh = horizontal_derivative(Rbar, N, n);

  ScalarField F = catalog_field("ball_funk", n);
  Jet Fj = F.jet(vars).truncated(order);
  Jet Fr = F.jet(reflect_y_vars(vars, n)).truncated(order);
  // d/dy_i of the reflected composition flips the sign once:
  // F_{.i}(-y) = -(d/dy_i)[F(x,-y)].
  CfObstruction out;
  out.lhs.resize(n);
  out.rhs.resize(n);
  for (int i = 0; i < n; ++i) {
    out.lhs[i] = Rh[i].value();
    double Fi = Fj.deriv(n + i).value();
    double Fri = -Fr.deriv(n + i).value();
    double Ti = 2.0 * (1.0 + c) * Fr.value() * Fri + 2.0 * Fj.value() * Fri -
                Fr.value() * Fi;
    out.rhs[i] = c * (1.0 + 2.0 * c) * Fr.value() * Ti;
  }
  return out;
}

MetrizabilityReport metrizability_conditions(const FinslerModel& F,
                                             const SprayModel& s,
                                             const std::vector<Point>& points,
                                             const ClassifyOptions& opts) {
  if (points.empty()) throw EmptyPointSet();
  const int n = s.n;
  ScalarField f = F.as_field();
  MetrizabilityReport out;
  for (const Point& p : points) {
    double fv = f.eval(p);
    if (fv <= 0)
      throw NonpositiveMetric("metric value " + std::to_string(fv) +
                              " at sample point");
    int raise = std::max(s.extra_order, f.extra_order);
    JetVars vars = lift(p, opts.order + raise);
    auto G = s.coeffs(vars);
    for (Jet& g : G) g = g.truncated(opts.order);
    Jet Fj = f.jet(vars).truncated(opts.order);
    auto N = nonlinear_connection(G, n);
    auto Fh = horizontal_derivative(Fj, N, n);
    Jet F0 = contract_y(Fh, vars, n);
    double scale = 1;
    for (int i = 0; i < n; ++i)
      scale = std::max(scale, std::abs(Fh[i].value()));

    for (int i = 0; i < n; ++i) {
      // F_{.i;0} = y^j d_j F_{.i} - 2 G^s F_{.i.s} - F_{.r} N^r_i
      Jet Fi = Fj.deriv(n + i);
      Jet Fi0 = Fi.constant_like(0.0);
      for (int j = 0; j < n; ++j) {
        Fi0 += vars[n + j] * Fi.deriv(j);
        Fi0 -= 2.0 * G[j] * Fi.deriv(n + j);
        Fi0 -= Fj.deriv(n + j) * N[j][i];
      }
      out.residual_hamel = std::max(
          out.residual_hamel, std::abs(Fh[i].value() - Fi0.value()) / scale);
      out.residual_half = std::max(
          out.residual_half,
          std::abs(Fh[i].value() - 0.5 * F0.deriv(n + i).value()) / scale);
    }
    out.factor.push_back(F0.value() / (2.0 * fv));
  }
  out.pass = out.residual_hamel < opts.tol && out.residual_half < opts.tol;
  return out;
}

SigmaCheck chfs001_check(const Expr& sigma, const std::vector<Point>& points,
                         double tol, double floor) {
  if (points.empty()) throw EmptyPointSet();
  const int n = sigma.dimension();
  SigmaCheck out;
  bool any = false;
  for (const Point& p : points) {
    JetVars vars = lift(p, 3);
    Jet sj = sigma.eval_jet(vars);
    auto grad_y = [&](const Jet& f) {
      Jet g = vars[n].truncated(f.order() - 1) * f.deriv(0);
      for (int i = 1; i < n; ++i)
        g += vars[n + i].truncated(f.order() - 1) * f.deriv(i);
      return g;
    };
    Jet s0 = grad_y(sj);
    if (std::abs(s0.value()) <= floor)
      throw ZeroAdjointFunction("|sigma_0| below floor at sample point");
    any = true;
    Jet s00 = grad_y(s0);
    Jet s000 = grad_y(s00);
    double lhs = 3.0 * s00.value() * s00.value();
    double rhs = 2.0 * s0.value() * s000.value();
    double r = std::abs(lhs - rhs);
    out.max_residual = std::max(out.max_residual, r);
    out.max_relative = std::max(
        out.max_relative, r / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
  }
  (void)any;
  out.metrizable = out.max_relative < tol;
  return out;
}

FunkObstructionReport funk_obstruction(const SprayModel& s,
                                       const ScalarField& Q,
                                       const std::vector<Point>& points,
                                       const ClassifyOptions& opts) {
  if (points.empty()) throw EmptyPointSet();
  ClassifyResult cls = classify(s, points, opts);
  if (!cls.flags.scalar)
    throw PreconditionFailed("spray is not of scalar curvature");
  if (!is_funk(Q, s, points, {opts.order, opts.tol}).verdict)
    throw PreconditionFailed("field is not a Funk function of the spray");

  const int n = s.n;
  FunkObstructionReport out;
  bool seen_nonzero_R = false;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const Point& p = points[pi];
    const CurvatureReport& rep = cls.reports[pi];
    int raise = std::max(s.extra_order, Q.extra_order);
    JetVars vars = lift(p, opts.order + raise);
    Jet Qj = Q.jet(vars).truncated(opts.order);
    double scale = std::max(1.0, rep.norm_R);
    for (int k = 0; k < n; ++k) {
      double lhs = rep.R_scalar * Qj.deriv(n + k).value();
      double rhs = Qj.value() * rep.tau[k];
      out.residual_relation =
          std::max(out.residual_relation, std::abs(lhs - rhs) / scale);
    }
    if (std::abs(rep.R_scalar) > 1e-9) {
      seen_nonzero_R = true;
      // c := Q^2 / R; its y-derivatives should vanish on isotropic sprays.
      auto G = s.coeffs(vars);
      for (Jet& g : G) g = g.truncated(opts.order);
      auto R = riemann_jets(vars, G, n);
      Jet Rjet = R[0][0];
      for (int i = 1; i < n; ++i) Rjet += R[i][i];
      Rjet = Rjet / static_cast<double>(n - 1);
      Jet c = pow_int(Qj.truncated(Rjet.order()), 2) / Rjet;
      out.c_values.push_back(c.value());
      for (int k = 0; k < n; ++k)
        out.c_y_deriv =
            std::max(out.c_y_deriv, std::abs(c.deriv(n + k).value()));
    }
  }
  out.vacuous = !seen_nonzero_R;
  return out;
}

}  // namespace spraylab
