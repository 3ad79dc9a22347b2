#include "spraylab/hamel.hpp"

#include <algorithm>
#include <cmath>

namespace spraylab {

namespace {

struct Lifted {
  JetVars vars;
  std::vector<Jet> G;
  Jet Q;
  std::vector<std::vector<Jet>> N;
};

Lifted lift_pair(const ScalarField& Q, const SprayModel& s, const Point& p,
                 int order) {
  Lifted L;
  int raise = std::max(s.extra_order, Q.extra_order);
  L.vars = lift(p, order + raise);
  L.G = s.coeffs(L.vars);
  for (Jet& g : L.G) g = g.truncated(order);
  L.Q = Q.jet(L.vars).truncated(order);
  L.N = nonlinear_connection(L.G, s.n);
  return L;
}

// Q_{.k;0} = y^j d_j Q_{.k} - 2 G^s Qdot_{.k,s} - Q_{.r} N^r_k.
Jet vertical_then_h0(const Lifted& L, int n, int k) {
  Jet Qk = L.Q.deriv(n + k);
  Jet out = Qk.constant_like(0.0);
  for (int j = 0; j < n; ++j) {
    out += L.vars[n + j] * Qk.deriv(j);
    out -= 2.0 * L.G[j] * Qk.deriv(n + j);
    out -= L.Q.deriv(n + j) * L.N[j][k];
  }
  return out;
}

HamelCheck run_check(const ScalarField& Q, const SprayModel& s,
                     const std::vector<Point>& points, HamelKind kind,
                     const HamelOptions& opts) {
  if (Q.degree != 1)
    throw DegreeMismatch("predicate requires a degree-1 field, got degree " +
                         std::to_string(Q.degree));
  if (points.empty()) throw EmptyPointSet();
  const int n = s.n;
  HamelCheck out;
  out.field_label = Q.label;
  out.spray_label = s.label;
  out.kind = kind;
  for (const Point& p : points) {
    Lifted L = lift_pair(Q, s, p, opts.order);
    auto Qh = horizontal_derivative(L.Q, L.N, n);
    double worst = 0, scale = 1;
    if (kind == HamelKind::weak_funk) {
      double lhs = contract_y(Qh, L.vars, n).value();
      double rhs = L.Q.value() * L.Q.value();
      scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      worst = std::abs(lhs - rhs);
    } else {
      std::vector<double> lhs(n), rhs(n);
      for (int k = 0; k < n; ++k) {
        lhs[k] = Qh[k].value();
        rhs[k] = kind == HamelKind::hamel
                     ? vertical_then_h0(L, n, k).value()
                     : L.Q.value() * L.Q.deriv(n + k).value();
        scale = std::max({scale, std::abs(lhs[k]), std::abs(rhs[k])});
      }
      for (int k = 0; k < n; ++k)
        worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
    }
    out.residuals.push_back(worst / scale);
    out.max_residual = std::max(out.max_residual, worst / scale);
  }
  out.verdict = out.max_residual < opts.tol;
  return out;
}

// Contracted y-gradient operator used by the power construction:
// E -> sum_i (dE/dy^i) x^i.
Expr contract_y_gradient(const Expr& e, int n) {
  Expr out = e.derivative(n) * Expr::coord(0, n);
  for (int i = 1; i < n; ++i)
    out = out + e.derivative(n + i) * Expr::coord(i, n);
  return out;
}

}  // namespace

HDerivative h_derivative(const ScalarField& Q, const SprayModel& s,
                         const Point& p, int d) {
  Lifted L = lift_pair(Q, s, p, d);
  HDerivative out;
  out.covector = horizontal_derivative(L.Q, L.N, s.n);
  out.contracted = contract_y(out.covector, L.vars, s.n);
  return out;
}

std::vector<std::vector<Jet>> second_h_derivative(const ScalarField& Q,
                                                  const SprayModel& s,
                                                  const Point& p, int d) {
  const int n = s.n;
  Lifted L = lift_pair(Q, s, p, d);
  auto Qh = horizontal_derivative(L.Q, L.N, n);
  std::vector<std::vector<Jet>> out(n, std::vector<Jet>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet v = Qh[i].deriv(j);
      for (int r = 0; r < n; ++r) {
        v -= L.N[r][j] * Qh[i].deriv(n + r);
        v -= Qh[r] * L.N[r][i].deriv(n + j);  // G^r_{ij}
      }
      out[i][j] = v;
    }
  return out;
}

HamelCheck is_hamel(const ScalarField& Q, const SprayModel& s,
                    const std::vector<Point>& points,
                    const HamelOptions& opts) {
  return run_check(Q, s, points, HamelKind::hamel, opts);
}
HamelCheck is_funk(const ScalarField& Q, const SprayModel& s,
                   const std::vector<Point>& points,
                   const HamelOptions& opts) {
  return run_check(Q, s, points, HamelKind::funk, opts);
}
HamelCheck is_weak_funk(const ScalarField& Q, const SprayModel& s,
                        const std::vector<Point>& points,
                        const HamelOptions& opts) {
  return run_check(Q, s, points, HamelKind::weak_funk, opts);
}

std::vector<double> projective_invariant_T(const ScalarField& Q,
                                           const SprayModel& s, const Point& p,
                                           int order) {
  if (Q.degree != 1)
    throw DegreeMismatch("invariant requires a degree-1 field");
  const int n = s.n;
  Lifted L = lift_pair(Q, s, p, order);
  auto Qh = horizontal_derivative(L.Q, L.N, n);
  std::vector<double> T(n);
  for (int i = 0; i < n; ++i)
    T[i] = vertical_then_h0(L, n, i).value() - Qh[i].value();
  return T;
}

ScalarField construct_hamel(const std::string& kind,
                            const ConstructInputs& in) {
  if (!in.P) throw KindMismatch("construction needs a primary field P");
  const ScalarField& P = *in.P;
  const int n = P.n;

  if (kind == "power") {
    if (in.k < 0) throw KindMismatch("power order must be nonnegative");
    if (in.k > 2)
      throw UnsupportedOrder("symbolic power construction supports k <= 2");
    if (!P.expr) throw KindMismatch("power construction needs an expression");
    if (in.k == 0) return P;
    Expr e = *P.expr;
    Expr base = e;
    for (int i = 1; i <= in.k; ++i) base = base * e;  // P^(k+1)
    for (int i = 0; i < in.k; ++i) base = contract_y_gradient(base, n);
    return ScalarField::from_expr(base, 1, P.label + "_pow" + std::to_string(in.k),
                                  P.domain);
  }

  if (kind == "symmetrized") {
    ScalarField rev = P.reversed();
    ScalarField out;
    out.n = n;
    out.degree = 1;
    out.label = P.label + "_sym";
    out.extra_order = std::max(P.extra_order, rev.extra_order);
    out.domain = P.domain;
    auto pf = P.fn, rf = rev.fn;
    out.fn = [pf, rf](const JetVars& v) { return 0.5 * (pf(v) + rf(v)); };
    if (P.expr && rev.expr)
      out.expr = (*P.expr + *rev.expr) * Expr::number(0.5, n);
    return out;
  }

  if (kind == "difference" || kind == "linear_combo") {
    if (!in.Q2) throw KindMismatch(kind + " needs a second field");
    const ScalarField& Q2 = *in.Q2;
    if (Q2.n != n) throw DegreeMismatch("dimension mismatch");
    double ca = kind == "difference" ? 0.5 : in.a;
    double cb = kind == "difference" ? -0.5 : in.b;
    ScalarField out;
    out.n = n;
    out.degree = 1;
    out.label = P.label + "_" + kind + "_" + Q2.label;
    out.extra_order = std::max(P.extra_order, Q2.extra_order);
    out.domain = P.domain;
    for (const Expr& e : Q2.domain) out.domain.push_back(e);
    auto pf = P.fn, qf = Q2.fn;
    out.fn = [pf, qf, ca, cb](const JetVars& v) {
      return ca * pf(v) + cb * qf(v);
    };
    if (P.expr && Q2.expr)
      out.expr = Expr::number(ca, n) * *P.expr + Expr::number(cb, n) * *Q2.expr;
    return out;
  }

  if (kind == "transport") {
    if (!in.psi) throw KindMismatch("transport needs a seed psi");
    if (!P.expr)
      throw KindMismatch("transport construction needs an expression for P");
    Expr pe = *P.expr;
    // psi(y + P x) (1 + P_{y^m} x^m)
    std::vector<Expr> repl(2 * n);
    for (int i = 0; i < n; ++i)
      repl[n + i] = Expr::coord(n + i, n) + pe * Expr::coord(i, n);
    Expr jac = Expr::number(1, n);
    for (int m = 0; m < n; ++m)
      jac = jac + pe.derivative(n + m) * Expr::coord(m, n);
    Expr out = in.psi->substitute(repl) * jac;
    return ScalarField::from_expr(out, 1, P.label + "_transport", P.domain);
  }

  throw KindMismatch("unknown construction kind: " + kind);
}

PairCheck check_complex_funk_pair(const ScalarField& P, const ScalarField& Q,
                                  const SprayModel& s,
                                  const std::vector<Point>& points,
                                  const HamelOptions& opts) {
  if (P.degree != 1 || Q.degree != 1)
    throw DegreeMismatch("pair check requires degree-1 fields");
  if (points.empty()) throw EmptyPointSet();
  const int n = s.n;
  PairCheck out;
  for (const Point& p : points) {
    int raise = std::max({s.extra_order, P.extra_order, Q.extra_order});
    JetVars vars = lift(p, opts.order + raise);
    auto G = s.coeffs(vars);
    for (Jet& g : G) g = g.truncated(opts.order);
    Jet Pj = P.jet(vars).truncated(opts.order);
    Jet Qj = Q.jet(vars).truncated(opts.order);
    auto N = nonlinear_connection(G, n);
    auto Ph = horizontal_derivative(Pj, N, n);
    auto Qh = horizontal_derivative(Qj, N, n);
    Jet PQ = Pj * Qj;
    double scale = 1;
    std::vector<double> r1(n), r2(n);
    for (int k = 0; k < n; ++k) {
      double lhs1 = Qh[k].value(), rhs1 = PQ.deriv(n + k).value();
      double lhs2 = Ph[k].value();
      double rhs2 = Pj.value() * Pj.deriv(n + k).value() -
                    Qj.value() * Qj.deriv(n + k).value();
      r1[k] = lhs1 - rhs1;
      r2[k] = lhs2 - rhs2;
      scale = std::max({scale, std::abs(lhs1), std::abs(rhs1), std::abs(lhs2),
                        std::abs(rhs2)});
    }
    for (int k = 0; k < n; ++k) {
      out.residual_first = std::max(out.residual_first, std::abs(r1[k]) / scale);
      out.residual_second =
          std::max(out.residual_second, std::abs(r2[k]) / scale);
    }
  }
  out.pass = out.residual_first < opts.tol && out.residual_second < opts.tol;
  return out;
}

std::vector<double> reversibility_residual(const ScalarField& Q,
                                           const SprayModel& s, const Point& p,
                                           int order) {
  const int n = s.n;
  ScalarField P = Q.reversed();
  Lifted L = lift_pair(P, s, p, order);
  auto Ph = horizontal_derivative(L.Q, L.N, n);

  // Q_{.r.i}(-y): two y-derivatives of the jet of Q lifted at (x, -y).
  // The reversed composition Q(x,-y) picks up two sign flips, which cancel.
  JetVars rvars = reflect_y_vars(L.vars, n);
  Jet Qr = Q.jet(rvars).truncated(order);
  auto Gr = s.coeffs(rvars);
  for (Jet& g : Gr) g = g.truncated(order);

  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double v = Ph[i].value() - vertical_then_h0(L, n, i).value();
    for (int r = 0; r < n; ++r)
      v -= 2.0 * (L.G[r].value() - Gr[r].value()) *
           Qr.deriv(n + r).deriv(n + i).value();
    out[i] = v;
  }
  return out;
}

}  // namespace spraylab
