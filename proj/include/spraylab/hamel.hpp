#ifndef SPRAYLAB_HAMEL_HPP
#define SPRAYLAB_HAMEL_HPP

#include <optional>

#include "spraylab/curvature.hpp"
#include "spraylab/model.hpp"

namespace spraylab {

struct KindMismatch : std::runtime_error {
  explicit KindMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedOrder : std::runtime_error {
  explicit UnsupportedOrder(const std::string& what)
      : std::runtime_error(what) {}
};

enum class HamelKind { hamel, funk, weak_funk };

struct HamelCheck {
  std::string field_label;
  std::string spray_label;
  HamelKind kind = HamelKind::hamel;
  std::vector<double> residuals;  // max_k |LHS_k - RHS_k| / scale, per point
  double max_residual = 0;
  bool verdict = false;
};

struct HamelOptions {
  int order = 4;
  double tol = 1e-8;
};

// Q_{;i} = d_iQ - N^r_i Qdot_r as jets of order d-1, plus Q_{;0} = y^i Q_{;i}.
struct HDerivative {
  std::vector<Jet> covector;  // Q_{;i}
  Jet contracted;             // Q_{;0}
};
HDerivative h_derivative(const ScalarField& Q, const SprayModel& s,
                         const Point& p, int d = 4);

// Q_{;i;j} = delta_j(Q_{;i}) - Q_{;r} G^r_{ij}; consumes two orders.
std::vector<std::vector<Jet>> second_h_derivative(const ScalarField& Q,
                                                  const SprayModel& s,
                                                  const Point& p, int d = 4);

HamelCheck is_hamel(const ScalarField& Q, const SprayModel& s,
                    const std::vector<Point>& points,
                    const HamelOptions& opts = {});
HamelCheck is_funk(const ScalarField& Q, const SprayModel& s,
                   const std::vector<Point>& points,
                   const HamelOptions& opts = {});
HamelCheck is_weak_funk(const ScalarField& Q, const SprayModel& s,
                        const std::vector<Point>& points,
                        const HamelOptions& opts = {});

// T_i = Q_{.i;0} - Q_{;i}; vanishes exactly when Q is a Hamel function, and
// is invariant under G -> G + P y.
std::vector<double> projective_invariant_T(const ScalarField& Q,
                                           const SprayModel& s, const Point& p,
                                           int order = 4);

struct ConstructInputs {
  std::optional<ScalarField> P;   // primary field
  std::optional<ScalarField> Q2;  // second field (difference / linear_combo)
  std::optional<Expr> psi;        // transport seed, a function of y alone
  int k = 0;                      // power order
  double a = 1, b = 1;            // linear_combo coefficients
};

// kind in {power, symmetrized, difference, transport, linear_combo}.
// power: contracted k-fold y-derivative of P^{k+1} (k <= 2 symbolically);
// symmetrized: (P(y)+P(-y))/2; difference: (P-Q2)/2; transport:
// psi(y + P x) (1 + Pdot_m x^m); linear_combo: a P + b Q2.
ScalarField construct_hamel(const std::string& kind,
                            const ConstructInputs& in);

struct PairCheck {
  double residual_first = 0;   // Q_{;k} - (PQ)_{.k}
  double residual_second = 0;  // P_{;k} - (P P_{.k} - Q Q_{.k})
  bool pass = false;
};
PairCheck check_complex_funk_pair(const ScalarField& P, const ScalarField& Q,
                                  const SprayModel& s,
                                  const std::vector<Point>& points,
                                  const HamelOptions& opts = {});

// residual_i = (P_{;i} - P_{i;0})(y) - 2[G^r(y)-G^r(-y)] Q_{.r.i}(-y) with
// P(y) := Q(-y); vanishes identically when Q is a Hamel function of s.
std::vector<double> reversibility_residual(const ScalarField& Q,
                                           const SprayModel& s, const Point& p,
                                           int order = 4);

}  // namespace spraylab

#endif  // SPRAYLAB_HAMEL_HPP
