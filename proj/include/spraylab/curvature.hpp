#ifndef SPRAYLAB_CURVATURE_HPP
#define SPRAYLAB_CURVATURE_HPP

#include "spraylab/model.hpp"

namespace spraylab {

struct EmptyPointSet : std::runtime_error {
  EmptyPointSet() : std::runtime_error("empty point set") {}
};
struct NonpositiveDensity : std::runtime_error {
  explicit NonpositiveDensity(const std::string& what)
      : std::runtime_error(what) {}
};

struct ClassifyFlags {
  bool scalar = false;
  bool isotropic = false;
  bool constant = false;
  bool r_flat = false;
};

struct CurvatureReport {
  Point point;
  std::vector<std::vector<double>> R_mat;  // R^i_k
  double ric = 0;
  double R_scalar = 0;            // Ric / (n-1)
  std::vector<double> tau;        // tau_k
  double residual_scalar = 0;
  double residual_isotropic = 0;
  double residual_constant = 0;
  double norm_R = 0;
  ClassifyFlags flags;
};

struct ClassifyResult {
  ClassifyFlags flags;
  double residual_scalar = 0;      // max over points
  double residual_isotropic = 0;
  double residual_constant = 0;
  double norm_R = 0;
  std::vector<CurvatureReport> reports;
};

// Jet-level building blocks. `vars` are lifted coordinates; `G` the spray
// coefficient jets at the same point (order d). Orders consumed: N one,
// G^i_{jk} two, R^i_k two, R^i_{jk} three.
std::vector<std::vector<Jet>> nonlinear_connection(const std::vector<Jet>& G,
                                                   int n);
std::vector<std::vector<std::vector<Jet>>> berwald_coeffs(
    const std::vector<Jet>& G, int n);
std::vector<std::vector<Jet>> riemann_jets(const JetVars& vars,
                                           const std::vector<Jet>& G, int n);

// Horizontal derivative of a scalar jet: f_{;i} = d_i f - N^r_i fdot_r.
std::vector<Jet> horizontal_derivative(const Jet& f,
                                       const std::vector<std::vector<Jet>>& N,
                                       int n);
Jet contract_y(const std::vector<Jet>& cov, const JetVars& vars, int n);

struct ClassifyOptions {
  int order = 4;       // jet order for the spray coefficients
  double tol = 1e-8;
};

CurvatureReport riemann(const SprayModel& s, const Point& p,
                        const ClassifyOptions& opts = {});
ClassifyResult classify(const SprayModel& s, const std::vector<Point>& points,
                        const ClassifyOptions& opts = {});

// G^i_{hjk} values at p (third y-derivatives of G^i).
std::vector<std::vector<std::vector<std::vector<double>>>> berwald_curvature(
    const SprayModel& s, const Point& p, int order = 4);

// R^i_{jk} := (1/3)(Rdot^i_k,j - Rdot^i_j,k), the three-index curvature
// whose vanishing characterizes R-flatness. Values at p.
std::vector<std::vector<std::vector<double>>> riemann3(const SprayModel& s,
                                                       const Point& p,
                                                       int order = 4);

// S = N^i_i - y^m d_m ln(sigma) as a jet of order (order-1).
Jet s_curvature(const SprayModel& s, const Expr& sigma, const Point& p,
                int order = 4);

}  // namespace spraylab

#endif  // SPRAYLAB_CURVATURE_HPP
