#ifndef SPRAYLAB_MODEL_HPP
#define SPRAYLAB_MODEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spraylab/expr.hpp"
#include "spraylab/jet.hpp"

namespace spraylab {

using Point = std::vector<double>;   // 2n coordinates (x, y)
using JetVars = std::vector<Jet>;    // lifted coordinates
using ScalarJetFn = std::function<Jet(const JetVars&)>;

struct DegreeMismatch : std::runtime_error {
  explicit DegreeMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct DomainViolation : std::runtime_error {
  explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

JetVars lift(const Point& p, int order);
Point reflect_y(const Point& p, int n);
// Coordinate jets for (x, -y) as functions of (x, y): y slots negated.
JetVars reflect_y_vars(const JetVars& vars, int n);

// A positively y-homogeneous scalar (x, y) -> Q(x, y). Either backed by an
// expression or by a jet-level evaluator (for derived quantities such as
// sigma_0 fields and projective factors). `extra_order` is the number of jet
// orders the evaluator consumes internally.
struct ScalarField {
  int n = 0;
  int degree = 1;
  std::string label;
  ScalarJetFn fn;
  std::optional<Expr> expr;
  int extra_order = 0;
  std::vector<Expr> domain;

  Jet jet(const JetVars& vars) const { return fn(vars); }
  // Jet of order `order` at p (lifts at order + extra_order).
  Jet jet_at(const Point& p, int order) const;
  double eval(const Point& p) const { return jet_at(p, 0).value(); }
  // Field (x, y) -> Q(x, -y).
  ScalarField reversed() const;

  static ScalarField from_expr(Expr e, int degree, std::string label,
                               std::vector<Expr> domain = {});
  // Q = y^i d(sigma)/dx^i for a scalar sigma(x), the closed 1-form field.
  static ScalarField sigma_zero(Expr sigma, std::string label,
                                std::vector<Expr> domain = {});
};

struct SprayModel {
  int n = 0;
  std::string label;
  std::vector<ScalarJetFn> G;
  std::optional<std::vector<Expr>> exprs;
  int extra_order = 0;
  std::vector<Expr> domain;

  std::vector<Jet> coeffs(const JetVars& vars) const;
  // G^i as jets of order `order` at p.
  std::vector<Jet> coeffs_at(const Point& p, int order) const;
  std::vector<double> values(const Point& p) const;

  static SprayModel from_exprs(std::vector<Expr> G, std::string label,
                               std::vector<Expr> domain = {});
  static SprayModel minkowski(int n);
};

struct FinslerModel {
  int n = 0;
  std::string label;
  Expr F;
  std::vector<Expr> domain;

  // Degree-1 scalar-field view of the metric.
  ScalarField as_field() const;
};

// All strict-inequality constraints g > 0 hold at p (with optional margin).
bool in_domain(const std::vector<Expr>& domain, const Point& p,
               double margin = 0.0);

// Euler residual |y^j d/dy^j f - m f| / max(1, |f|) at p.
double euler_residual(const ScalarField& q, const Point& p);
double euler_residual_spray(const SprayModel& s, const Point& p);

}  // namespace spraylab

#endif  // SPRAYLAB_MODEL_HPP
