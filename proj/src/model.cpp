#include "spraylab/model.hpp"

#include <cmath>

namespace spraylab {

JetVars lift(const Point& p, int order) { return Jet::lift(p, order); }

Point reflect_y(const Point& p, int n) {
  Point q = p;
  for (int i = 0; i < n; ++i) q[n + i] = -q[n + i];
  return q;
}

JetVars reflect_y_vars(const JetVars& vars, int n) {
  JetVars out = vars;
  for (int i = 0; i < n; ++i) out[n + i] = -out[n + i];
  return out;
}

Jet ScalarField::jet_at(const Point& p, int order) const {
  JetVars vars = lift(p, order + extra_order);
  return fn(vars).truncated(order);
}

ScalarField ScalarField::reversed() const {
  ScalarField out = *this;
  out.label = label + "(-y)";
  if (expr) out.expr = expr->reverse_field();
  ScalarJetFn base = fn;
  int n_ = n;
  out.fn = [base, n_](const JetVars& vars) {
    return base(reflect_y_vars(vars, n_));
  };
  return out;
}

ScalarField ScalarField::from_expr(Expr e, int degree, std::string label,
                                   std::vector<Expr> domain) {
  ScalarField f;
  f.n = e.dimension();
  f.degree = degree;
  f.label = std::move(label);
  f.expr = e;
  f.domain = std::move(domain);
  f.fn = [e](const JetVars& vars) { return e.eval_jet(vars); };
  return f;
}

ScalarField ScalarField::sigma_zero(Expr sigma, std::string label,
                                    std::vector<Expr> domain) {
  ScalarField f;
  int n = sigma.dimension();
  f.n = n;
  f.degree = 1;
  f.label = std::move(label);
  f.extra_order = 1;
  f.domain = std::move(domain);
  f.fn = [sigma, n](const JetVars& vars) {
    Jet s = sigma.eval_jet(vars);
    Jet q = vars[n] * s.deriv(0);
    for (int i = 1; i < n; ++i) q += vars[n + i] * s.deriv(i);
    return q;
  };
  return f;
}

std::vector<Jet> SprayModel::coeffs(const JetVars& vars) const {
  std::vector<Jet> out;
  out.reserve(G.size());
  for (const auto& g : G) out.push_back(g(vars));
  // uniform order across coefficients
  int d = out[0].order();
  for (const Jet& j : out) d = std::min(d, j.order());
  for (Jet& j : out)
    if (j.order() != d) j = j.truncated(d);
  return out;
}

std::vector<Jet> SprayModel::coeffs_at(const Point& p, int order) const {
  JetVars vars = lift(p, order + extra_order);
  auto out = coeffs(vars);
  for (Jet& j : out) j = j.truncated(order);
  return out;
}

std::vector<double> SprayModel::values(const Point& p) const {
  auto jets = coeffs_at(p, 0);
  std::vector<double> out(jets.size());
  for (std::size_t i = 0; i < jets.size(); ++i) out[i] = jets[i].value();
  return out;
}

SprayModel SprayModel::from_exprs(std::vector<Expr> G, std::string label,
                                  std::vector<Expr> domain) {
  SprayModel s;
  s.n = G[0].dimension();
  s.label = std::move(label);
  s.domain = std::move(domain);
  s.exprs = G;
  for (const Expr& e : G)
    s.G.push_back([e](const JetVars& vars) { return e.eval_jet(vars); });
  return s;
}

SprayModel SprayModel::minkowski(int n) {
  std::vector<Expr> zeros(n, Expr::number(0.0, n));
  return from_exprs(std::move(zeros), "minkowski");
}

ScalarField FinslerModel::as_field() const {
  return ScalarField::from_expr(F, 1, label, domain);
}

bool in_domain(const std::vector<Expr>& domain, const Point& p, double margin) {
  for (const Expr& g : domain) {
    if (g.eval(p) <= margin) return false;
  }
  return true;
}

double euler_residual(const ScalarField& q, const Point& p) {
  JetVars vars = lift(p, 1 + q.extra_order);
  Jet j = q.fn(vars);
  double contracted = 0;
  int n = q.n;
  std::vector<int> alpha(2 * n, 0);
  for (int i = 0; i < n; ++i) {
    alpha[n + i] = 1;
    contracted += p[n + i] * j.partial(alpha);
    alpha[n + i] = 0;
  }
  double f = j.value();
  return std::abs(contracted - q.degree * f) / std::max(1.0, std::abs(f));
}

double euler_residual_spray(const SprayModel& s, const Point& p) {
  JetVars vars = lift(p, 1 + s.extra_order);
  auto G = s.coeffs(vars);
  int n = s.n;
  double worst = 0;
  std::vector<int> alpha(2 * n, 0);
  for (const Jet& g : G) {
    double contracted = 0;
    for (int i = 0; i < n; ++i) {
      alpha[n + i] = 1;
      contracted += p[n + i] * g.partial(alpha);
      alpha[n + i] = 0;
    }
    worst = std::max(worst, std::abs(contracted - 2.0 * g.value()) /
                                 std::max(1.0, std::abs(g.value())));
  }
  return worst;
}

}  // namespace spraylab
