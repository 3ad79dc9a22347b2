#ifndef SPRAYLAB_PROJECTIVE_HPP
#define SPRAYLAB_PROJECTIVE_HPP

#include "spraylab/hamel.hpp"

namespace spraylab {

struct ZeroAdjointFunction : std::runtime_error {
  explicit ZeroAdjointFunction(const std::string& what)
      : std::runtime_error(what) {}
};
struct NotScalarCurvature : std::runtime_error {
  explicit NotScalarCurvature(const std::string& what)
      : std::runtime_error(what) {}
};
struct NonpositiveMetric : std::runtime_error {
  explicit NonpositiveMetric(const std::string& what)
      : std::runtime_error(what) {}
};
struct PreconditionFailed : std::runtime_error {
  explicit PreconditionFailed(const std::string& what)
      : std::runtime_error(what) {}
};

// Gbar^i = G^i + P y^i. The result is an ordinary SprayModel, so every
// curvature and Hamel operation accepts it transparently; `tag` records
// whether the factor was recognized as a Hamel/Funk function.
struct DeformedSpray {
  SprayModel spray;
  std::string tag;  // "", "hamel_spray", "funk_spray"
};

DeformedSpray deform(const SprayModel& s, const ScalarField& P);

// The derived factor P = Q_{;0}/(2Q) as a scalar field (throws
// ZeroAdjointFunction where |Q| <= floor).
ScalarField pm_factor(const SprayModel& s, const ScalarField& Q,
                      double floor = 1e-6);

// Gbar^i = G^i + (Q_{;0}/(2Q)) y^i. If tag_points are given, the result is
// tagged hamel_spray / funk_spray when the corresponding predicate passes.
DeformedSpray pm_spray(const SprayModel& s, const ScalarField& Q,
                       const std::vector<Point>& tag_points = {},
                       double floor = 1e-6);

// Closed-form transform of the curvature under G -> G + Py, used as the
// oracle against direct curvature of the deformed spray:
//   Rbar^i_k = R^i_k + (3T_k - T_{0.k}) y^i - T_0 delta^i_k,
//   T_j = P_{;j} - P P_{.j},  Rbar_ic = Ric - (n-1)(P_{;0} - P^2).
struct CurvatureTransform {
  std::vector<std::vector<double>> R_mat;
  double ric = 0;
};
CurvatureTransform curvature_transform_oracle(const SprayModel& s,
                                              const ScalarField& P,
                                              const Point& p, int order = 4);

// Q's horizontal derivative with respect to pm_spray(s, Q); vanishes when Q
// is a Hamel function of s.
std::vector<double> hamel_spray_residual(const SprayModel& s,
                                         const ScalarField& Q, const Point& p,
                                         int order = 4);

struct LambdaResult {
  std::vector<double> lambda;  // per point
  ClassifyFlags flags;
  double residual_form = 0;    // Rbar^i_k - lambda (Q^2 d^i_k - Q Q_{.k} y^i)
  double max_y_deriv = 0;      // of lambda, for the isotropic flag
  double max_x_deriv = 0;      // of lambda, for the constant flag
};
// lambda = (R + P^2 - P_{;0})/Q^2 with P = Q_{;0}/(2Q) and R the base
// spray's isotropic curvature; requires pm_spray(s,Q) of scalar curvature.
LambdaResult lambda_extract(const SprayModel& s, const ScalarField& Q,
                            const std::vector<Point>& points,
                            const ClassifyOptions& opts = {});

// One-parameter deformation Gbar = G + c F(-y) y of the Funk spray of the
// unit ball (n = 2 by default).
DeformedSpray cf_family(double c, int n = 2);
enum class CfVerdict { constant, isotropic_only };
struct CfClassification {
  CfVerdict verdict = CfVerdict::constant;
  ClassifyResult detail;
};
CfClassification cf_classify(double c, const std::vector<Point>& points,
                             const ClassifyOptions& opts = {});

// Both sides of the constancy obstruction for cf_family:
//   lhs_i = Rbar_{;i} (w.r.t. the deformed spray),
//   rhs_i = c(1+2c) F(-y) [2(1+c)F(-y)F_{.i}(-y) + 2F(y)F_{.i}(-y)
//                          - F(-y)F_{.i}(y)].
struct CfObstruction {
  std::vector<double> lhs, rhs;
};
CfObstruction cf_constancy_obstruction(double c, const Point& p, int n = 2,
                                       int order = 4);

struct MetrizabilityReport {
  double residual_hamel = 0;     // F_{;i} - F_{.i;0}
  double residual_half = 0;      // F_{;i} - (1/2) F_{;0.i}
  std::vector<double> factor;    // P = F_{;0}/(2F) per point
  bool pass = false;
};
MetrizabilityReport metrizability_conditions(const FinslerModel& F,
                                             const SprayModel& s,
                                             const std::vector<Point>& points,
                                             const ClassifyOptions& opts = {});

// Zero-curvature metrizability test for sigma-deformations of the flat
// spray: residual of 3(sigma_00)^2 = 2 sigma_0 sigma_000 (subscript 0 =
// contraction of successive x-gradients with y).
struct SigmaCheck {
  bool metrizable = true;
  double max_residual = 0;   // absolute
  double max_relative = 0;   // scaled by max(1, |lhs|, |rhs|)
};
SigmaCheck chfs001_check(const Expr& sigma, const std::vector<Point>& points,
                         double tol = 1e-8, double floor = 1e-6);

struct FunkObstructionReport {
  double residual_relation = 0;   // R Q_{.k} - Q tau_k
  double c_y_deriv = 0;           // y-dependence of c := Q^2/R (isotropic, R != 0)
  std::vector<double> c_values;   // per point where defined
  bool vacuous = false;           // R ~ 0 everywhere sampled
};
FunkObstructionReport funk_obstruction(const SprayModel& s,
                                       const ScalarField& Q,
                                       const std::vector<Point>& points,
                                       const ClassifyOptions& opts = {});

}  // namespace spraylab

#endif  // SPRAYLAB_PROJECTIVE_HPP
